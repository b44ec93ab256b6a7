//! Disk-tiling certificates and their checker.
//!
//! A certificate asserts that a closed loop of slide moves bounds a disk of
//! classified faces. Nothing in it is trusted: every face carries a replay
//! prelude (slide edges leading from the certificate's root chart to the
//! chart its witness lives on), the claimed kind, and the vertex keys around
//! the tile. The checker replays each prelude, re-derives each face from its
//! witness, glues sides by key, and confirms the glued complex is a disk
//! whose boundary spells the stored outer word up to spur cancellation.
//!
//! Spurs matter: compositions routinely certify `p · q⁻¹` where `p` and `q`
//! share a prefix, and the shared prefix leaves no face behind. Traced and
//! stored boundaries are therefore compared after cyclic free reduction,
//! while the stored word itself stays the target loop edge for edge.

use std::collections::BTreeMap;

use crate::chart::Chart;
use crate::gf2;
use crate::moves::{verify_loop, LoopKind, LoopWitness, SlideEdge};
use crate::pi1::CutSystemKey;
use crate::{Error, Result};

/// Directed move-graph edge at key level.
pub type KeyEdge = (CutSystemKey, CutSystemKey);

/// One tile of a certificate.
#[derive(Clone, Debug)]
pub struct CertFace {
    /// Slides replayed in order from the root chart to reach the chart the
    /// witness is expressed on. May be empty for faces at the root.
    pub prelude: Vec<SlideEdge>,
    pub kind: LoopKind,
    pub witness: LoopWitness,
    /// Vertex keys around the tile, in witness derivation order.
    pub cycle: Vec<CutSystemKey>,
}

impl CertFace {
    pub fn nsides(&self) -> usize {
        self.cycle.len()
    }

    /// Directed key edge along side `t` (from corner `t` to corner `t+1`).
    pub fn side(&self, t: usize) -> KeyEdge {
        let n = self.cycle.len();
        (self.cycle[t % n].clone(), self.cycle[(t + 1) % n].clone())
    }
}

/// Identification of two distinct tile sides. The sides must carry mutually
/// reversed key edges, as glued tiles of an oriented disk induce opposite
/// orientations on a shared edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gluing {
    pub a: (usize, usize),
    pub b: (usize, usize),
}

/// A van Kampen style disk witness for one closed loop of moves.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub faces: Vec<CertFace>,
    pub gluings: Vec<Gluing>,
    /// The certified loop, edge for edge, from its basepoint.
    pub outer: Vec<KeyEdge>,
}

/// Checker verdict. Failing a check is data, not an error; `face` pins the
/// first offending tile when the fault is local to one.
#[derive(Clone, Debug)]
pub struct CertCheck {
    pub ok: bool,
    pub face: Option<usize>,
    pub reason: String,
}

impl CertCheck {
    fn pass() -> CertCheck {
        CertCheck { ok: true, face: None, reason: String::new() }
    }

    fn fail(face: Option<usize>, reason: impl Into<String>) -> CertCheck {
        CertCheck { ok: false, face, reason: reason.into() }
    }
}

pub(crate) fn path_word(keys: &[CutSystemKey]) -> Vec<KeyEdge> {
    keys.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect()
}

pub(crate) fn reversed_word(word: &[KeyEdge]) -> Vec<KeyEdge> {
    word.iter().rev().map(|(a, b)| (b.clone(), a.clone())).collect()
}

fn is_inverse_pair(a: &KeyEdge, b: &KeyEdge) -> bool {
    a.0 == b.1 && a.1 == b.0
}

/// Free reduction of a cyclic edge word: adjacent mutually inverse edges
/// cancel, including across the seam.
fn cyclic_reduce(word: &[KeyEdge]) -> Vec<KeyEdge> {
    let mut stack: Vec<KeyEdge> = Vec::new();
    for e in word {
        if stack.last().is_some_and(|p| is_inverse_pair(p, e)) {
            stack.pop();
        } else {
            stack.push(e.clone());
        }
    }
    while stack.len() >= 2 && is_inverse_pair(&stack[0], stack.last().unwrap()) {
        stack.pop();
        stack.remove(0);
    }
    stack
}

fn canonical_rotation(word: &[KeyEdge]) -> Vec<KeyEdge> {
    if word.is_empty() {
        return Vec::new();
    }
    (0..word.len())
        .map(|r| {
            let mut w = word[r..].to_vec();
            w.extend_from_slice(&word[..r]);
            w
        })
        .min()
        .unwrap()
}

fn word_chains(word: &[KeyEdge]) -> bool {
    (0..word.len()).all(|i| word[i].1 == word[(i + 1) % word.len()].0)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a] = b;
        }
    }

    fn classes(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}

/// Validate `cert` against its root chart. Every face witness is replayed
/// and re-derived; the gluing must assemble an oriented disk; the traced
/// boundary must spell the stored outer word up to cyclic free reduction.
pub fn check_certificate(chart: &Chart, cert: &Certificate) -> CertCheck {
    if !word_chains(&cert.outer) {
        return CertCheck::fail(None, "outer word does not chain");
    }

    if cert.faces.is_empty() {
        if !cert.gluings.is_empty() {
            return CertCheck::fail(None, "gluings without faces");
        }
        if cyclic_reduce(&cert.outer).is_empty() {
            return CertCheck::pass();
        }
        return CertCheck::fail(None, "no faces but the outer word does not collapse");
    }

    // side bookkeeping: global corner ids and the glued-partner map
    let mut offset = Vec::with_capacity(cert.faces.len());
    let mut total = 0usize;
    for f in &cert.faces {
        if f.cycle.len() < 3 {
            return CertCheck::fail(Some(offset.len()), "face with fewer than three sides");
        }
        offset.push(total);
        total += f.cycle.len();
    }

    let mut partner: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for g in &cert.gluings {
        for &(fi, t) in [&g.a, &g.b] {
            if fi >= cert.faces.len() || t >= cert.faces[fi].cycle.len() {
                return CertCheck::fail(None, "gluing refers to a missing side");
            }
        }
        if g.a == g.b {
            return CertCheck::fail(Some(g.a.0), "side glued to itself");
        }
        let (ea, eb) = (cert.faces[g.a.0].side(g.a.1), cert.faces[g.b.0].side(g.b.1));
        if !is_inverse_pair(&ea, &eb) {
            return CertCheck::fail(Some(g.a.0), "glued sides do not reverse each other");
        }
        if partner.insert(g.a, g.b).is_some() || partner.insert(g.b, g.a).is_some() {
            return CertCheck::fail(Some(g.a.0), "side glued twice");
        }
    }

    // witness replay and re-derivation
    for (fi, face) in cert.faces.iter().enumerate() {
        let mut local = chart.clone();
        for step in &face.prelude {
            match step.replay(&local) {
                Ok(res) => local = res.chart,
                Err(e) => return CertCheck::fail(Some(fi), format!("prelude replay failed: {e}")),
            }
        }
        match verify_loop(&local, face.kind, &face.witness) {
            Ok(keys) => {
                if keys != face.cycle {
                    return CertCheck::fail(Some(fi), "witness derives different vertex keys");
                }
            }
            Err(e) => return CertCheck::fail(Some(fi), format!("witness rejected: {e}")),
        }
    }

    // corner identification from gluings; a side (f,t) runs corner t -> t+1,
    // its partner runs the same edge backwards
    let corner = |fi: usize, t: usize| offset[fi] + t % cert.faces[fi].cycle.len();
    let mut verts = UnionFind::new(total);
    let mut conn = UnionFind::new(total);
    for g in &cert.gluings {
        verts.union(corner(g.a.0, g.a.1), corner(g.b.0, g.b.1 + 1));
        verts.union(corner(g.a.0, g.a.1 + 1), corner(g.b.0, g.b.1));
        conn.union(corner(g.a.0, g.a.1), corner(g.b.0, g.b.1));
    }
    for (fi, f) in cert.faces.iter().enumerate() {
        for t in 0..f.cycle.len() {
            conn.union(corner(fi, t), corner(fi, t + 1));
        }
    }
    if conn.classes() != 1 {
        return CertCheck::fail(None, "tiling is not connected");
    }

    let nv = verts.classes() as i64;
    let ne = (total - cert.gluings.len()) as i64;
    let nf = cert.faces.len() as i64;
    if nv - ne + nf != 1 {
        return CertCheck::fail(
            None,
            format!("euler characteristic {} of the tiling is not 1", nv - ne + nf),
        );
    }

    // boundary trace: from the end of an unglued side, fan through glued
    // corners to the next unglued side
    let succ = |s: (usize, usize)| -> Option<(usize, usize)> {
        let mut cand = (s.0, (s.1 + 1) % cert.faces[s.0].cycle.len());
        for _ in 0..=total {
            match partner.get(&cand) {
                None => return Some(cand),
                Some(&(g, u)) => cand = (g, (u + 1) % cert.faces[g].cycle.len()),
            }
        }
        None
    };
    let unglued: Vec<(usize, usize)> = (0..cert.faces.len())
        .flat_map(|fi| (0..cert.faces[fi].cycle.len()).map(move |t| (fi, t)))
        .filter(|s| !partner.contains_key(s))
        .collect();
    let Some(&start) = unglued.first() else {
        return CertCheck::fail(None, "tiling has no boundary");
    };
    let mut trace = Vec::new();
    let mut cur = start;
    loop {
        trace.push(cur);
        let Some(next) = succ(cur) else {
            return CertCheck::fail(Some(cur.0), "glued corner fan does not close");
        };
        if next == start {
            break;
        }
        if trace.len() > unglued.len() {
            return CertCheck::fail(None, "boundary walk repeats before closing");
        }
        cur = next;
    }
    if trace.len() != unglued.len() {
        return CertCheck::fail(None, "boundary splits into several cycles");
    }

    let traced: Vec<KeyEdge> = trace.iter().map(|&(fi, t)| cert.faces[fi].side(t)).collect();
    if !word_chains(&traced) {
        return CertCheck::fail(None, "traced boundary does not chain");
    }
    if canonical_rotation(&cyclic_reduce(&traced)) != canonical_rotation(&cyclic_reduce(&cert.outer))
    {
        return CertCheck::fail(None, "boundary spells a different loop than the outer word");
    }

    CertCheck::pass()
}

/// First homology of a two-complex given by directed edges and face boundary
/// words: free rank and torsion over the integers, dimension over GF(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Report {
    pub rank: usize,
    pub torsion: Vec<u64>,
    pub dim_mod2: usize,
}

/// Homology of the abstract chain complex with `nverts` vertices, directed
/// `edges`, and faces as lists of (edge, coefficient) pairs.
pub(crate) fn chain_h1(
    nverts: usize,
    edges: &[(usize, usize)],
    faces: &[Vec<(usize, i64)>],
) -> H1Report {
    if edges.is_empty() {
        return H1Report { rank: 0, torsion: Vec::new(), dim_mod2: 0 };
    }
    let d1: Vec<Vec<i64>> = edges
        .iter()
        .map(|&(a, b)| {
            let mut row = vec![0i64; nverts];
            row[b] += 1;
            row[a] -= 1;
            row
        })
        .collect();
    let d2: Vec<Vec<i64>> = faces
        .iter()
        .map(|f| {
            let mut row = vec![0i64; edges.len()];
            for &(e, c) in f {
                row[e] += c;
            }
            row
        })
        .collect();

    let diag1 = gf2::smith_diagonal(d1.clone());
    let rank1 = diag1.iter().filter(|&&d| d != 0).count();
    let (rank2, torsion) = if d2.is_empty() {
        (0, Vec::new())
    } else {
        let diag2 = gf2::smith_diagonal(d2.clone());
        let rank = diag2.iter().filter(|&&d| d != 0).count();
        let torsion: Vec<u64> =
            diag2.iter().map(|d| d.unsigned_abs()).filter(|&d| d > 1).collect();
        (rank, torsion)
    };
    let rank = edges.len() - rank1 - rank2;

    let to_bits = |row: &Vec<i64>| {
        let mut v = gf2::BitVec::zeros(row.len());
        for (i, &c) in row.iter().enumerate() {
            if c.rem_euclid(2) == 1 {
                v.set(i, true);
            }
        }
        v
    };
    let r1m2 = gf2::rank(d1.iter().map(to_bits));
    let r2m2 = gf2::rank(d2.iter().map(to_bits));
    let dim_mod2 = edges.len() - r1m2 - r2m2;

    H1Report { rank, torsion, dim_mod2 }
}

/// Homology of the glued tiling itself: vertices are corner classes, edges
/// are side classes. A valid disk certificate reports zero in every field.
pub fn certificate_h1(cert: &Certificate) -> H1Report {
    if cert.faces.is_empty() {
        return H1Report { rank: 0, torsion: Vec::new(), dim_mod2: 0 };
    }
    let mut offset = Vec::with_capacity(cert.faces.len());
    let mut total = 0usize;
    for f in &cert.faces {
        offset.push(total);
        total += f.cycle.len();
    }
    let corner = |fi: usize, t: usize| offset[fi] + t % cert.faces[fi].cycle.len();
    let mut verts = UnionFind::new(total);
    let mut side_rep: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for g in &cert.gluings {
        verts.union(corner(g.a.0, g.a.1), corner(g.b.0, g.b.1 + 1));
        verts.union(corner(g.a.0, g.a.1 + 1), corner(g.b.0, g.b.1));
        let rep = g.a.min(g.b);
        side_rep.insert(g.a, rep);
        side_rep.insert(g.b, rep);
    }

    let mut vert_ids: BTreeMap<usize, usize> = BTreeMap::new();
    let mut vid = |verts: &mut UnionFind, c: usize, ids: &mut BTreeMap<usize, usize>| {
        let root = verts.find(c);
        let next = ids.len();
        *ids.entry(root).or_insert(next)
    };

    let mut edge_ids: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut faces: Vec<Vec<(usize, i64)>> = Vec::new();
    for (fi, f) in cert.faces.iter().enumerate() {
        let mut word = Vec::new();
        for t in 0..f.cycle.len() {
            let rep = *side_rep.get(&(fi, t)).unwrap_or(&(fi, t));
            let next = edge_ids.len();
            let e = *edge_ids.entry(rep).or_insert(next);
            if e == edges.len() {
                let tail = vid(&mut verts, corner(rep.0, rep.1), &mut vert_ids);
                let head = vid(&mut verts, corner(rep.0, rep.1 + 1), &mut vert_ids);
                edges.push((tail, head));
            }
            word.push((e, if rep == (fi, t) { 1 } else { -1 }));
        }
        faces.push(word);
        let _ = fi;
    }
    chain_h1(vert_ids.len(), &edges, &faces)
}

// ---------------------------------------------------------------------------
// assembly scaffolding for certificate generators

/// Reference into a patch boundary: one side per edge of a logical key path.
/// `None` marks a phantom edge, present in the outer word but carried by no
/// face (the residue of a trivial sub-certificate).
#[derive(Clone, Debug, Default)]
pub(crate) struct PathRefs {
    pub sides: Vec<Option<(usize, usize)>>,
}

impl PathRefs {
    pub fn phantom(n: usize) -> PathRefs {
        PathRefs { sides: vec![None; n] }
    }

    pub fn shifted(mut self, off: usize) -> PathRefs {
        for s in self.sides.iter_mut().flatten() {
            s.0 += off;
        }
        self
    }

    pub fn prepended(mut self, head: Option<(usize, usize)>) -> PathRefs {
        self.sides.insert(0, head);
        self
    }

    pub fn extended(mut self, tail: PathRefs) -> PathRefs {
        self.sides.extend(tail.sides);
        self
    }
}

/// A certificate under construction: faces plus internal gluings, with the
/// boundary tracked externally by [`PathRefs`] handed to the caller.
#[derive(Debug, Default)]
pub(crate) struct Patch {
    pub faces: Vec<CertFace>,
    pub gluings: Vec<Gluing>,
}

impl Patch {
    pub fn new() -> Patch {
        Patch::default()
    }

    pub fn add_face(&mut self, face: CertFace) -> usize {
        self.faces.push(face);
        self.faces.len() - 1
    }

    /// Append a child patch, prefixing `prefix` onto every child prelude.
    /// Returns the face index offset for shifting the child's path refs.
    pub fn absorb(&mut self, child: Patch, prefix: &[SlideEdge]) -> usize {
        let off = self.faces.len();
        for mut f in child.faces {
            if !prefix.is_empty() {
                let mut p = prefix.to_vec();
                p.extend(f.prelude);
                f.prelude = p;
            }
            self.faces.push(f);
        }
        for g in child.gluings {
            self.gluings.push(Gluing {
                a: (g.a.0 + off, g.a.1),
                b: (g.b.0 + off, g.b.1),
            });
        }
        off
    }

    pub fn glue(&mut self, a: (usize, usize), b: (usize, usize)) -> Result<()> {
        let ea = self.faces[a.0].side(a.1);
        let eb = self.faces[b.0].side(b.1);
        if !is_inverse_pair(&ea, &eb) {
            return Err(Error::Internal(
                "assembled gluing pairs sides that do not reverse each other".into(),
            ));
        }
        self.gluings.push(Gluing { a, b });
        Ok(())
    }

    /// Identify two runs of sides carrying the same key path. Positions where
    /// either run is phantom stay open.
    pub fn glue_paths(&mut self, a: &PathRefs, b: &PathRefs) -> Result<()> {
        if a.sides.len() != b.sides.len() {
            return Err(Error::Internal("assembled paths differ in length".into()));
        }
        for (x, y) in a.sides.iter().zip(&b.sides) {
            if let (Some(x), Some(y)) = (x, y) {
                self.glue(*x, *y)?;
            }
        }
        Ok(())
    }

    pub fn into_certificate(self, outer: Vec<KeyEdge>) -> Certificate {
        Certificate { faces: self.faces, gluings: self.gluings, outer }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::loops::triangle_cycle;

    fn triangle_cert() -> (Chart, Certificate) {
        let (chart, cycle) = triangle_cycle();
        let w = &cycle[0].witness;
        let face = CertFace {
            prelude: Vec::new(),
            kind: LoopKind::SlideTriangle,
            witness: LoopWitness::Triangle {
                system: w.system.clone(),
                slid: w.slid,
                over: w.over,
                arc: w.arc.clone(),
                bound: 4,
            },
            cycle: cycle.iter().map(|e| e.source.clone()).collect(),
        };
        let outer = cycle.iter().map(|e| (e.source.clone(), e.target.clone())).collect();
        (chart, Certificate { faces: vec![face], gluings: Vec::new(), outer })
    }

    #[test]
    fn hand_built_triangle_certificate_validates() {
        let (chart, cert) = triangle_cert();
        let verdict = check_certificate(&chart, &cert);
        assert!(verdict.ok, "{}", verdict.reason);
        let h = certificate_h1(&cert);
        assert_eq!(h, H1Report { rank: 0, torsion: Vec::new(), dim_mod2: 0 });
    }

    #[test]
    fn corrupted_witness_is_reported_with_its_face() {
        let (chart, mut cert) = triangle_cert();
        if let LoopWitness::Triangle { slid, over, .. } = &mut cert.faces[0].witness {
            std::mem::swap(slid, over);
        }
        let verdict = check_certificate(&chart, &cert);
        assert!(!verdict.ok);
        assert_eq!(verdict.face, Some(0));
        assert!(!verdict.reason.is_empty());
    }

    #[test]
    fn wrong_cycle_keys_are_rejected() {
        let (chart, mut cert) = triangle_cert();
        cert.faces[0].cycle.rotate_left(1);
        let verdict = check_certificate(&chart, &cert);
        assert!(!verdict.ok);
        assert_eq!(verdict.face, Some(0));
    }

    #[test]
    fn empty_certificate_needs_a_collapsing_outer() {
        let (chart, cert) = triangle_cert();
        let e = cert.outer[0].clone();
        let back = (e.1.clone(), e.0.clone());
        let trivial = Certificate {
            faces: Vec::new(),
            gluings: Vec::new(),
            outer: vec![e, back],
        };
        assert!(check_certificate(&chart, &trivial).ok);

        let hollow = Certificate {
            faces: Vec::new(),
            gluings: Vec::new(),
            outer: cert.outer.clone(),
        };
        let verdict = check_certificate(&chart, &hollow);
        assert!(!verdict.ok);
        assert!(verdict.reason.contains("does not collapse"));
    }

    #[test]
    fn spurs_on_the_outer_word_are_tolerated() {
        let (chart, mut cert) = triangle_cert();
        let u0 = cert.outer[0].0.clone();
        let u1 = cert.outer[0].1.clone();
        cert.outer.insert(1, (u1.clone(), u0.clone()));
        cert.outer.insert(2, (u0, u1));
        let verdict = check_certificate(&chart, &cert);
        assert!(verdict.ok, "{}", verdict.reason);
    }

    #[test]
    fn bad_gluings_are_rejected() {
        let (chart, cert) = triangle_cert();
        let mut doubled = Certificate {
            faces: vec![cert.faces[0].clone(), cert.faces[0].clone()],
            gluings: vec![Gluing { a: (0, 0), b: (1, 0) }],
            outer: cert.outer.clone(),
        };
        let verdict = check_certificate(&chart, &doubled);
        assert!(!verdict.ok);
        assert!(verdict.reason.contains("reverse"));

        doubled.gluings = vec![Gluing { a: (0, 0), b: (0, 0) }];
        assert!(!check_certificate(&chart, &doubled).ok);

        doubled.gluings = vec![Gluing { a: (0, 0), b: (2, 0) }];
        assert!(!check_certificate(&chart, &doubled).ok);
    }

    #[test]
    fn chain_h1_matches_known_complexes() {
        // triangle graph, no face: one independent cycle
        let edges = [(0usize, 1usize), (1, 2), (2, 0)];
        let h = chain_h1(3, &edges, &[]);
        assert_eq!(h, H1Report { rank: 1, torsion: Vec::new(), dim_mod2: 1 });

        // filling the triangle kills it
        let face = vec![vec![(0usize, 1i64), (1, 1), (2, 1)]];
        let h = chain_h1(3, &edges, &face);
        assert_eq!(h, H1Report { rank: 0, torsion: Vec::new(), dim_mod2: 0 });

        // doubled face boundary: rank drops mod nothing, torsion Z/2 appears
        let doubled = vec![vec![(0usize, 2i64), (1, 2), (2, 2)]];
        let h = chain_h1(3, &edges, &doubled);
        assert_eq!(h, H1Report { rank: 0, torsion: vec![2], dim_mod2: 1 });
    }
}
