//! Free-homotopy canonical forms for curves, computed on a collapsed spine.
//!
//! Every mesh component has boundary, so it deformation-retracts onto a graph:
//! repeatedly push a face through an edge that no other remaining face uses.
//! Each push records a rewrite rule for the removed edge, and expanding the
//! rules in reverse order compiles a word in the surviving edges for every
//! original edge. A spanning forest of the survivors turns those words into
//! words in free generators, one per non-tree survivor.
//!
//! Curve keys are conjugacy canonical forms: cyclically reduce the curve's
//! word, then take the least rotation among the word and its inverse. Two
//! essential simple closed curves on an orientable surface are isotopic
//! exactly when they are freely homotopic, so key equality is the isotopy
//! test used everywhere downstream.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::surface::{Curve, Dart, Mesh, MultiCurve};

/// Letters are nonzero: generator `g` is `g+1`, its inverse `-(g+1)`.
pub type Word = Vec<i32>;

pub fn push_reduced(acc: &mut Word, letter: i32) {
    debug_assert!(letter != 0);
    if acc.last() == Some(&-letter) {
        acc.pop();
    } else {
        acc.push(letter);
    }
}

pub fn reduce(w: &[i32]) -> Word {
    let mut out = Vec::with_capacity(w.len());
    for &l in w {
        push_reduced(&mut out, l);
    }
    out
}

pub fn invert(w: &[i32]) -> Word {
    w.iter().rev().map(|&l| -l).collect()
}

pub fn cyclic_reduce(w: &[i32]) -> Word {
    let w = reduce(w);
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == -w[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    w[lo..hi].to_vec()
}

/// Least rotation among the cyclic reduction of `w` and of its inverse.
pub fn canonical_cyclic(w: &[i32]) -> Word {
    let w = cyclic_reduce(w);
    if w.is_empty() {
        return w;
    }
    let inv = invert(&w);
    let mut best: Option<Word> = None;
    for cand in [w, inv] {
        for r in 0..cand.len() {
            let mut rot = cand[r..].to_vec();
            rot.extend_from_slice(&cand[..r]);
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap()
}

/// Canonical form of an unoriented free-homotopy class. Empty ⇔ the curve is
/// null-homotopic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CurveKey(pub Word);

impl CurveKey {
    pub fn of_word(w: &[i32]) -> CurveKey {
        CurveKey(canonical_cyclic(w))
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for CurveKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CurveKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{self}⟩")
    }
}

/// Sorted multiset of component keys; the vertex identity of slide complexes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CutSystemKey(pub Vec<CurveKey>);

impl CutSystemKey {
    pub fn of_keys(mut keys: Vec<CurveKey>) -> CutSystemKey {
        keys.sort();
        CutSystemKey(keys)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for CutSystemKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CutSystemKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⌊{self}⌋")
    }
}

/// Deformation retraction of a mesh onto a graph, with the induced word in
/// free generators for every original edge.
#[derive(Clone)]
pub struct Spine {
    /// per mesh edge: the word of its forward dart
    fwd_word: Vec<Word>,
    /// generator index → surviving mesh edge carrying it
    gen_edges: Vec<usize>,
    /// surviving edges assigned the empty word by the spanning forest
    tree_edges: Vec<usize>,
    /// free-group rank per mesh component
    comp_rank: Vec<usize>,
}

pub fn collapse_to_spine(mesh: &Mesh) -> Spine {
    let ne = mesh.nedges();
    let mut count = vec![0u32; ne];
    for face in mesh.faces() {
        for d in &face.word {
            count[d.edge()] += 1;
        }
    }

    let mut alive = vec![true; mesh.nfaces()];
    let mut is_killed = vec![false; ne];
    // (edge, its unique dart in a live face, the rest of that face's word)
    let mut killed: Vec<(usize, Dart, Vec<Dart>)> = Vec::new();
    let mut queue: VecDeque<usize> = (0..ne).filter(|&e| count[e] == 1).collect();
    while let Some(e) = queue.pop_front() {
        if count[e] != 1 {
            continue; // its face went away through another edge; e survives
        }
        let d = [Dart::fwd(e), Dart::fwd(e).rev()]
            .into_iter()
            .find(|d| mesh.face_of(*d).is_some_and(|f| alive[f]))
            .expect("an edge of multiplicity one lies in a live face");
        let f = mesh.face_of(d).unwrap();
        let p = mesh.pos_in_face(d).unwrap();
        let word = &mesh.face(f).word;
        let rest: Vec<Dart> =
            word[p + 1..].iter().chain(word[..p].iter()).copied().collect();
        alive[f] = false;
        is_killed[e] = true;
        killed.push((e, d, rest));
        for dd in word {
            let ee = dd.edge();
            count[ee] -= 1;
            if count[ee] == 1 {
                queue.push_back(ee);
            }
        }
    }
    assert!(
        alive.iter().all(|a| !a),
        "collapse stalled; a closed component slipped past validation"
    );

    // spanning forest over the survivors, lowest labels first
    let nv = mesh.nverts();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for e in 0..ne {
        if is_killed[e] {
            continue;
        }
        let (u, w) = (mesh.tail(Dart::fwd(e)), mesh.head(Dart::fwd(e)));
        adj[u].push((e, w));
        adj[w].push((e, u));
    }
    let mut in_tree = vec![false; ne];
    let mut visited = vec![false; nv];
    let mut roots = 0usize;
    for start in 0..nv {
        if visited[start] {
            continue;
        }
        roots += 1;
        visited[start] = true;
        let mut bfs = VecDeque::from([start]);
        while let Some(v) = bfs.pop_front() {
            for &(e, w) in &adj[v] {
                if !visited[w] {
                    visited[w] = true;
                    in_tree[e] = true;
                    bfs.push_back(w);
                }
            }
        }
    }
    assert_eq!(roots, mesh.ncomps(), "spine must stay connected per component");

    let mut fwd_word: Vec<Option<Word>> = vec![None; ne];
    let mut gen_edges = Vec::new();
    let mut tree_edges = Vec::new();
    for e in 0..ne {
        if is_killed[e] {
            continue;
        }
        if in_tree[e] {
            tree_edges.push(e);
            fwd_word[e] = Some(Vec::new());
        } else {
            gen_edges.push(e);
            fwd_word[e] = Some(vec![gen_edges.len() as i32]);
        }
    }
    // a killed edge's rest-word only involves edges killed later or survivors
    for (e, d, rest) in killed.iter().rev() {
        let mut w = Vec::new();
        for rd in rest {
            let piece = fwd_word[rd.edge()].as_ref().expect("reverse order resolves later edges");
            if rd.reversed() {
                for l in piece.iter().rev() {
                    push_reduced(&mut w, -l);
                }
            } else {
                for l in piece {
                    push_reduced(&mut w, *l);
                }
            }
        }
        fwd_word[*e] = Some(if d.reversed() { w } else { invert(&w) });
    }

    let mut comp_rank = vec![0usize; mesh.ncomps()];
    for &e in &gen_edges {
        comp_rank[mesh.comp_of_edge(e)] += 1;
    }
    for (c, rep) in mesh.component_report().iter().enumerate() {
        assert_eq!(
            comp_rank[c] as i64,
            1 - rep.chi,
            "free rank must match 1 - χ on component {c}"
        );
    }

    let spine = Spine {
        fwd_word: fwd_word.into_iter().map(|w| w.unwrap()).collect(),
        gen_edges,
        tree_edges,
        comp_rank,
    };
    debug_assert!(mesh.faces().iter().all(|f| spine.word_of_darts(&f.word).is_empty()));
    spine
}

impl Spine {
    pub fn ngens(&self) -> usize {
        self.gen_edges.len()
    }

    pub fn gen_edges(&self) -> &[usize] {
        &self.gen_edges
    }

    pub fn tree_edges(&self) -> &[usize] {
        &self.tree_edges
    }

    pub fn comp_rank(&self, c: usize) -> usize {
        self.comp_rank[c]
    }

    pub fn dart_word(&self, d: Dart) -> Word {
        let w = &self.fwd_word[d.edge()];
        if d.reversed() {
            invert(w)
        } else {
            w.clone()
        }
    }

    pub fn word_of_darts(&self, darts: &[Dart]) -> Word {
        let mut out = Vec::new();
        for d in darts {
            let w = &self.fwd_word[d.edge()];
            if d.reversed() {
                for l in w.iter().rev() {
                    push_reduced(&mut out, -l);
                }
            } else {
                for l in w {
                    push_reduced(&mut out, *l);
                }
            }
        }
        out
    }
}

pub fn curve_key(spine: &Spine, curve: &Curve) -> CurveKey {
    CurveKey::of_word(&spine.word_of_darts(curve.darts()))
}

pub fn cut_system_key(spine: &Spine, curves: &MultiCurve) -> CutSystemKey {
    CutSystemKey::of_keys(curves.iter().map(|c| curve_key(spine, c)).collect())
}
