//! First homology of a mesh over GF(2), plus integer ranks for tilings.
//!
//! The basis is deterministic: boundary space rows come from faces in label
//! order, cycle representatives from fundamental cycles of a BFS forest whose
//! edges are scanned in label order. Coordinates of a class are computed with
//! a tagged echelon (chain part ⊕ coordinate part), so they are unique and
//! reproducible across runs.

use crate::gf2::{self, BitVec, Echelon};
use crate::surface::{component_report, Curve, Dart, Mesh, MultiCurve};
use crate::{Error, Result};

pub struct H1Basis {
    nedges: usize,
    dim: usize,
    boundary: Echelon,
    /// rows of length nedges + dim: representative cycle ⊕ coordinate tag
    tagged: Echelon,
}

fn face_chain(mesh: &Mesh, f: usize) -> BitVec {
    let mut c = BitVec::zeros(mesh.nedges());
    for d in &mesh.face(f).word {
        c.flip(d.edge());
    }
    c
}

/// Fundamental cycles of a BFS forest, lowest edge labels first.
fn fundamental_cycles(mesh: &Mesh) -> Vec<BitVec> {
    let ne = mesh.nedges();
    let nv = mesh.nverts();
    let mut parent_edge: Vec<Option<usize>> = vec![None; nv];
    let mut depth = vec![usize::MAX; nv];
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv]; // vertex → (edge, other)
    for e in 0..ne {
        let u = mesh.tail(Dart::fwd(e));
        let w = mesh.head(Dart::fwd(e));
        adj[u].push((e, w));
        adj[w].push((e, u));
    }
    let mut order: Vec<usize> = Vec::new();
    for root in 0..nv {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &(e, w) in &adj[v] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent_edge[w] = Some(e);
                    queue.push_back(w);
                }
            }
        }
    }
    let in_tree: std::collections::HashSet<usize> =
        parent_edge.iter().flatten().copied().collect();
    let path_to_root = |mut v: usize, chain: &mut BitVec, mesh: &Mesh| {
        while let Some(e) = parent_edge[v] {
            chain.flip(e);
            let u = mesh.tail(Dart::fwd(e));
            let w = mesh.head(Dart::fwd(e));
            v = if v == u { w } else { u };
        }
    };
    let mut cycles = Vec::new();
    for e in 0..ne {
        if in_tree.contains(&e) {
            continue;
        }
        let mut chain = BitVec::zeros(ne);
        chain.flip(e);
        path_to_root(mesh.tail(Dart::fwd(e)), &mut chain, mesh);
        path_to_root(mesh.head(Dart::fwd(e)), &mut chain, mesh);
        cycles.push(chain);
    }
    cycles
}

impl H1Basis {
    pub fn new(mesh: &Mesh) -> H1Basis {
        let ne = mesh.nedges();
        let mut boundary = Echelon::new();
        for f in 0..mesh.nfaces() {
            boundary.insert(face_chain(mesh, f));
        }
        // pick representatives among fundamental cycles
        let mut probe = boundary.clone();
        let mut reps = Vec::new();
        for cycle in fundamental_cycles(mesh) {
            if probe.insert(cycle.clone()).is_some() {
                reps.push(cycle);
            }
        }
        let dim = reps.len();
        let mut tagged = Echelon::new();
        for row in boundary.rows() {
            let mut t = BitVec::zeros(ne + dim);
            for i in row.ones() {
                t.set(i, true);
            }
            tagged.insert(t);
        }
        for (k, rep) in reps.iter().enumerate() {
            let mut t = BitVec::zeros(ne + dim);
            for i in rep.ones() {
                t.set(i, true);
            }
            t.set(ne + k, true);
            tagged.insert(t);
        }
        H1Basis { nedges: ne, dim, boundary, tagged }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Class coordinates of a 1-cycle in the fixed basis.
    pub fn class_of(&self, mesh: &Mesh, chain: &BitVec) -> Result<BitVec> {
        if !is_cycle(mesh, chain) {
            return Err(Error::Invalid("chain is not a cycle".into()));
        }
        let mut t = BitVec::zeros(self.nedges + self.dim);
        for i in chain.ones() {
            t.set(i, true);
        }
        self.tagged.reduce(&mut t);
        let mut coords = BitVec::zeros(self.dim);
        for i in t.ones() {
            if i < self.nedges {
                return Err(Error::Internal("cycle did not reduce to the basis".into()));
            }
            coords.set(i - self.nedges, true);
        }
        Ok(coords)
    }

    pub fn is_boundary(&self, chain: &BitVec) -> bool {
        self.boundary.contains(chain)
    }
}

pub fn is_cycle(mesh: &Mesh, chain: &BitVec) -> bool {
    let mut odd = vec![false; mesh.nverts()];
    for e in chain.ones() {
        odd[mesh.tail(Dart::fwd(e))] ^= true;
        odd[mesh.head(Dart::fwd(e))] ^= true;
    }
    odd.iter().all(|&b| !b)
}

/// Class of a curve in the mesh's fixed H₁(·; ℤ/2) basis.
pub fn h1_class_mod2(mesh: &Mesh, curve: &Curve) -> BitVec {
    let basis = H1Basis::new(mesh);
    basis
        .class_of(mesh, &curve.chain(mesh))
        .expect("curves are cycles")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttachingVerdict {
    pub attaching: bool,
    /// every complementary component keeps some original boundary
    pub component_criterion: bool,
    /// classes of the curves are independent in H₁(Σ; ℤ/2)
    pub rank_criterion: bool,
}

/// Decide whether the curves form an attaching set, computing both
/// characterizations and insisting they agree.
pub fn is_attaching_set(mesh: &Mesh, curves: &MultiCurve) -> Result<AttachingVerdict> {
    let reports = component_report(mesh, curves)?;
    let component_criterion = reports.iter().all(|r| r.has_original_boundary);

    let basis = H1Basis::new(mesh);
    let mut probe = basis.boundary.clone();
    let mut rank_criterion = true;
    for c in curves.iter() {
        if probe.insert(c.chain(mesh)).is_none() {
            rank_criterion = false;
            break;
        }
    }

    if component_criterion != rank_criterion {
        return Err(Error::Internal(format!(
            "attaching-set criteria disagree: components {component_criterion}, rank {rank_criterion}"
        )));
    }
    Ok(AttachingVerdict { attaching: component_criterion, component_criterion, rank_criterion })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Rank {
    pub z_rank: i64,
    pub gf2_dim: i64,
    /// nontrivial invariant factors (torsion coefficients)
    pub torsion: Vec<i64>,
}

/// Integer and mod-2 first homology ranks of the mesh's chain complex.
pub fn h1_rank(mesh: &Mesh) -> H1Rank {
    let ne = mesh.nedges();
    let nv = mesh.nverts();
    let nf = mesh.nfaces();

    // ∂1: V × E with +1 at head, −1 at tail
    let mut d1 = vec![vec![0i64; ne]; nv];
    for e in 0..ne {
        let d = Dart::fwd(e);
        d1[mesh.head(d)][e] += 1;
        d1[mesh.tail(d)][e] -= 1;
    }
    // ∂2: E × F with signed incidence counts
    let mut d2 = vec![vec![0i64; nf]; ne];
    for (f, face) in mesh.faces().iter().enumerate() {
        for d in &face.word {
            d2[d.edge()][f] += if d.reversed() { -1 } else { 1 };
        }
    }

    let s1 = gf2::smith_diagonal(d1.clone());
    let s2 = gf2::smith_diagonal(d2.clone());
    let rank1 = s1.iter().filter(|&&x| x != 0).count() as i64;
    let rank2 = s2.iter().filter(|&&x| x != 0).count() as i64;
    let z_rank = (ne as i64 - rank1) - rank2;
    let torsion: Vec<i64> = s2.iter().copied().filter(|&x| x > 1).collect();

    let to_rows = |m: &Vec<Vec<i64>>, cols: usize| -> Vec<BitVec> {
        m.iter()
            .map(|row| {
                let mut b = BitVec::zeros(cols);
                for (i, &x) in row.iter().enumerate() {
                    if x.rem_euclid(2) == 1 {
                        b.set(i, true);
                    }
                }
                b
            })
            .collect()
    };
    let r1_2 = gf2::rank(to_rows(&d1, ne)) as i64;
    let r2_2 = gf2::rank(to_rows(&d2, nf)) as i64;
    let gf2_dim = (ne as i64 - r1_2) - r2_2;

    H1Rank { z_rank, gf2_dim, torsion }
}
