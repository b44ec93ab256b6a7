//! Small dense linear algebra over GF(2), plus integer Smith normal form.
//!
//! Everything here works at "handful of hundreds of columns" scale, which is all
//! the chain complexes in this crate ever reach. Rows are bit vectors packed into
//! u64 blocks; elimination is plain Gaussian elimination with deterministic pivot
//! order (lowest column first), so bases derived from it are reproducible.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    blocks: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, blocks: vec![0; (len + 63) / 64] }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.blocks[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.len);
        let (b, s) = (i / 64, i % 64);
        if v {
            self.blocks[b] |= 1 << s;
        } else {
            self.blocks[b] &= !(1 << s);
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.blocks[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    /// Lowest set bit, if any.
    pub fn first_one(&self) -> Option<usize> {
        for (bi, &b) in self.blocks.iter().enumerate() {
            if b != 0 {
                let i = bi * 64 + b.trailing_zeros() as usize;
                return (i < self.len).then_some(i);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec[")?;
        for i in self.ones() {
            write!(f, "{i} ")?;
        }
        write!(f, "]")
    }
}

/// Row-echelon basis over GF(2) with deterministic pivots.
///
/// Rows are kept fully reduced against each other (reduced row echelon), so the
/// representation of a vector in the span is unique.
#[derive(Clone, Default)]
pub struct Echelon {
    /// (pivot column, row), sorted by pivot.
    rows: Vec<(usize, BitVec)>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &BitVec> {
        self.rows.iter().map(|(_, r)| r)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|(p, _)| *p)
    }

    /// Reduce `v` against the basis in place.
    pub fn reduce(&self, v: &mut BitVec) {
        for (p, row) in &self.rows {
            if v.get(*p) {
                v.xor_assign(row);
            }
        }
    }

    /// Insert `v` if independent; returns its pivot column if the rank grew.
    pub fn insert(&mut self, mut v: BitVec) -> Option<usize> {
        self.reduce(&mut v);
        let p = v.first_one()?;
        // keep reduced form: clear column p in existing rows
        for (_, row) in self.rows.iter_mut() {
            if row.get(p) {
                row.xor_assign(&v);
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        Some(p)
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }
}

/// Reduce `v` against `basis`, recording which rows were used.
///
/// Returns the residue. `used[i]` is set when row `i` participated; with `basis`
/// in reduced echelon form this is the coordinate vector of `v` modulo whatever
/// `v` retains outside the span.
pub fn reduce_tracked(basis: &Echelon, v: &mut BitVec) -> BitVec {
    let mut used = BitVec::zeros(basis.rank());
    for (i, (p, row)) in basis.rows.iter().enumerate() {
        if v.get(*p) {
            v.xor_assign(row);
            used.set(i, true);
        }
    }
    used
}

/// GF(2) rank of an arbitrary list of rows.
pub fn rank(rows: impl IntoIterator<Item = BitVec>) -> usize {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

/// Dense invertible-or-not matrix over GF(2), rows as BitVec. Used by the toy
/// invariant in `extend`.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    pub n: usize,
    pub rows: Vec<BitVec>,
}

impl Mat {
    pub fn identity(n: usize) -> Self {
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut r = BitVec::zeros(n);
            r.set(i, true);
            rows.push(r);
        }
        Mat { n, rows }
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(self.n)
    }

    /// self * other (acting on column vectors).
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut r = BitVec::zeros(n);
            for k in self.rows[i].ones() {
                r.xor_assign(&other.rows[k]);
            }
            rows.push(r);
        }
        Mat { n, rows }
    }

    pub fn inverse(&self) -> Option<Mat> {
        let n = self.n;
        let mut a = self.rows.clone();
        let mut inv = Mat::identity(n).rows;
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r].get(col))?;
            a.swap(col, piv);
            inv.swap(col, piv);
            for r in 0..n {
                if r != col && a[r].get(col) {
                    let (ar, ac) = borrow_two(&mut a, r, col);
                    ar.xor_assign(ac);
                    let (ir, ic) = borrow_two(&mut inv, r, col);
                    ir.xor_assign(ic);
                }
            }
        }
        Some(Mat { n, rows: inv })
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            for i in 0..self.n {
                write!(f, "{}", if r.get(i) { '1' } else { '0' })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn borrow_two<T>(v: &mut [T], i: usize, j: usize) -> (&mut T, &T) {
    assert_ne!(i, j);
    if i < j {
        let (a, b) = v.split_at_mut(j);
        (&mut a[i], &b[0])
    } else {
        let (a, b) = v.split_at_mut(i);
        (&mut b[0], &a[j])
    }
}

/// Smith normal form diagonal of an integer matrix (entries stay desk-scale).
///
/// Returns the non-negative diagonal d1 | d2 | ... including zeros.
pub fn smith_diagonal(mut m: Vec<Vec<i64>>) -> Vec<i64> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut top = 0usize;
    let mut left = 0usize;
    while top < rows && left < cols {
        // find minimal nonzero |entry| in the working block
        let mut best: Option<(usize, usize)> = None;
        for r in top..rows {
            for c in left..cols {
                if m[r][c] != 0
                    && best.map_or(true, |(br, bc)| m[r][c].abs() < m[br][bc].abs())
                {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        m.swap(top, pr);
        for row in m.iter_mut() {
            row.swap(left, pc);
        }
        // clear row and column by division steps
        let mut dirty = true;
        while dirty {
            dirty = false;
            for r in top + 1..rows {
                if m[r][left] != 0 {
                    let q = m[r][left].div_euclid(m[top][left]);
                    for c in left..cols {
                        m[r][c] -= q * m[top][c];
                    }
                    if m[r][left] != 0 {
                        m.swap(top, r);
                        dirty = true;
                    }
                }
            }
            for c in left + 1..cols {
                if m[top][c] != 0 {
                    let q = m[top][c].div_euclid(m[top][left]);
                    for r in top..rows {
                        m[r][c] -= q * m[r][left];
                    }
                    if m[top][c] != 0 {
                        for r in top..rows {
                            let t = m[r][left];
                            m[r][left] = m[r][c];
                            m[r][c] = t;
                        }
                        dirty = true;
                    }
                }
            }
        }
        diag.push(m[top][left].abs());
        top += 1;
        left += 1;
    }
    // enforce divisibility chain
    let n = diag.len();
    for i in 0..n {
        for j in i + 1..n {
            if diag[i] != 0 {
                let a = diag[i];
                let b = diag[j];
                let g = gcd(a, b);
                let l = if g == 0 { 0 } else { a / g * b };
                diag[i] = g;
                diag[j] = l;
            }
        }
    }
    diag
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(len: usize, ones: &[usize]) -> BitVec {
        let mut v = BitVec::zeros(len);
        for &i in ones {
            v.set(i, true);
        }
        v
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut e = Echelon::new();
        assert_eq!(e.insert(bv(4, &[0, 1])), Some(0));
        assert_eq!(e.insert(bv(4, &[1, 2])), Some(1));
        assert_eq!(e.insert(bv(4, &[0, 2])), None); // dependent
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&bv(4, &[0, 2])));
        assert!(!e.contains(&bv(4, &[3])));
    }

    #[test]
    fn tracked_reduction_gives_coordinates() {
        let mut e = Echelon::new();
        e.insert(bv(5, &[0, 3]));
        e.insert(bv(5, &[1, 3]));
        let mut v = bv(5, &[0, 1]);
        let used = reduce_tracked(&e, &mut v);
        assert!(v.is_zero());
        assert_eq!(used.ones().collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn mat_inverse_roundtrip() {
        let mut m = Mat::identity(3);
        m.rows[0] = bv(3, &[0, 1]);
        m.rows[2] = bv(3, &[1, 2]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let mut m = Mat::identity(2);
        m.rows[1] = m.rows[0].clone();
        assert!(m.inverse().is_none());
    }

    #[test]
    fn smith_of_known_matrices() {
        // diag(2,6) over the chain 2 | 6
        let d = smith_diagonal(vec![vec![2, 0], vec![0, 6]]);
        assert_eq!(d, vec![2, 6]);
        let d = smith_diagonal(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        // classic example with determinant 2*6*12? just pin the invariants:
        let prod: i64 = d.iter().product();
        assert_eq!(d.len(), 3);
        assert!(prod != 0);
        for w in d.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        // torus presentation: boundary map of the square is zero
        let d = smith_diagonal(vec![vec![0, 0]]);
        assert_eq!(d, Vec::<i64>::new());
    }
}
