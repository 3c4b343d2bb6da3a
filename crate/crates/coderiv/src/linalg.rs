//! Exact rational sparse linear algebra: rank, kernel, solve, and quotient
//! complements.
//!
//! All arithmetic is in lowest-terms arbitrary-precision rationals; there is
//! no rounding anywhere. Elimination keeps rows sorted-sparse and reduces
//! to the (unique) reduced row echelon form, so kernel bases and quotient
//! representatives are deterministic.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::Error;

/// Exact rational scalar: lowest terms, positive denominator, `0 = 0/1`.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub fn ratq(numer: i64, denom: i64) -> Rat {
    Rat::new(numer.into(), denom.into())
}

/// Parses `p` or `p/q`.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    s.trim()
        .parse::<Rat>()
        .map_err(|e| Error::Parse(format!("bad rational `{s}`: {e}")))
}

/// Renders `p/q` with `q = 1` elided.
pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

/// Sparse vector: strictly ascending `(index, nonzero value)` pairs.
pub type SparseVec = Vec<(usize, Rat)>;

pub fn sparse_from_dense(v: &[Rat]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, dim: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); dim];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `a - c*b` for sorted sparse vectors.
fn sub_scaled(a: &SparseVec, c: &Rat, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                let v = -(c * &b[j].1);
                if !v.is_zero() {
                    out.push((b[j].0, v));
                }
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let v = &a[i].1 - c * &b[j].1;
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for (col, v) in &b[j..] {
        let v = -(c * v);
        if !v.is_zero() {
            out.push((*col, v));
        }
    }
    out
}

/// Row-echelon accumulator. Rows are stored keyed by pivot column with the
/// leading coefficient normalized to 1; among candidate pivots the
/// lowest-index row wins because rows are inserted in order and later rows
/// are reduced against earlier ones.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// Fully reduces `v` against the stored rows.
    pub fn reduce(&self, v: SparseVec) -> SparseVec {
        let mut v = v;
        let mut at = 0;
        while at < v.len() {
            let col = v[at].0;
            match self.rows.get(&col) {
                Some(row) => {
                    let c = v[at].1.clone();
                    v = sub_scaled(&v, &c, row);
                }
                None => at += 1,
            }
        }
        v
    }

    /// Reduces and, if a nonzero remainder survives, stores it as a new
    /// pivot row. Returns the new pivot column.
    pub fn insert(&mut self, v: SparseVec) -> Option<usize> {
        let mut r = self.reduce(v);
        if r.is_empty() {
            return None;
        }
        let lead = r[0].1.clone();
        if !lead.is_one() {
            for (_, x) in &mut r {
                *x /= &lead;
            }
        }
        let col = r[0].0;
        self.rows.insert(col, r);
        Some(col)
    }

    /// Back-substitutes so every row is zero at all other pivot columns.
    /// After this the state is the (unique) RREF of whatever was inserted.
    pub fn reduce_fully(&mut self) {
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        for &p in pivots.iter().rev() {
            let row = self.rows.remove(&p).expect("pivot row present");
            let lead = row[0].clone();
            let tail: SparseVec = row[1..].to_vec();
            let mut reduced = self.reduce(tail);
            reduced.insert(0, lead);
            self.rows.insert(p, reduced);
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseVec)> {
        self.rows.iter().map(|(p, r)| (*p, r))
    }
}

/// Sparse matrix over the rationals. No zero entries are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = RatMatrix::zero(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col {
                m.set(*r, c, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rat) {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Rat {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rat)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn row_vec(&self, row: usize) -> SparseVec {
        self.entries
            .range((row, 0)..=(row, usize::MAX))
            .map(|(&(_, c), v)| (c, v.clone()))
            .collect()
    }

    /// All columns as sparse vectors, in column order.
    pub fn columns(&self) -> Vec<SparseVec> {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (&(r, c), v) in &self.entries {
            cols[c].push((r, v.clone()));
        }
        cols
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut entries = BTreeMap::new();
        for (&(r, c), v) in &self.entries {
            entries.insert((c, r), v.clone());
        }
        RatMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul(&self, rhs: &RatMatrix) -> Result<RatMatrix, Error> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(self.cols, rhs.rows));
        }
        let mut out = RatMatrix::zero(self.rows, rhs.cols);
        let left_rows: Vec<SparseVec> = (0..self.rows).map(|r| self.row_vec(r)).collect();
        let right_rows: Vec<SparseVec> = (0..rhs.rows).map(|r| rhs.row_vec(r)).collect();
        for (r, row) in left_rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &right_rows[*k] {
                    let e = acc.entry(*c).or_insert_with(Rat::zero);
                    *e += a * b;
                }
            }
            for (c, v) in acc {
                if !v.is_zero() {
                    out.entries.insert((r, c), v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>, Error> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(self.cols, v.len()));
        }
        let mut out = vec![Rat::zero(); self.rows];
        for (&(r, c), a) in &self.entries {
            if !v[c].is_zero() {
                out[r] += a * &v[c];
            }
        }
        Ok(out)
    }

    /// `M v` for sparse `v`. Storage is row-major, so this is one pass over
    /// all entries.
    pub fn mul_sparse_vec(&self, v: &SparseVec) -> Result<SparseVec, Error> {
        for (c, _) in v {
            if *c >= self.cols {
                return Err(Error::ShapeMismatch(self.cols, c + 1));
            }
        }
        let lookup: BTreeMap<usize, &Rat> = v.iter().map(|(i, x)| (*i, x)).collect();
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        for (&(r, c), a) in &self.entries {
            if let Some(x) = lookup.get(&c) {
                let e = acc.entry(r).or_insert_with(Rat::zero);
                *e += a * *x;
            }
        }
        Ok(acc.into_iter().filter(|(_, x)| !x.is_zero()).collect())
    }

    fn echelon(&self) -> Echelon {
        let mut ech = Echelon::new();
        for r in 0..self.rows {
            let row = self.row_vec(r);
            if !row.is_empty() {
                ech.insert(row);
            }
        }
        ech
    }

    /// RREF of the matrix. Unique, hence deterministic.
    pub fn rref(&self) -> Echelon {
        let mut ech = self.echelon();
        ech.reduce_fully();
        ech
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Canonical basis of the right null space, one vector per free column
    /// in ascending order. `cols() - rank()` vectors, each with `M v = 0`.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        kernel_from_rref(&self.rref(), self.cols)
    }

    /// Some `x` with `M x = b`, or `None` if the system is inconsistent.
    /// Free variables are set to zero, so the answer is deterministic.
    pub fn solve(&self, b: &[Rat]) -> Result<Option<Vec<Rat>>, Error> {
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch(self.rows, b.len()));
        }
        let aug_col = self.cols;
        let mut ech = Echelon::new();
        for (r, rhs) in b.iter().enumerate() {
            let mut row = self.row_vec(r);
            if !rhs.is_zero() {
                row.push((aug_col, rhs.clone()));
            }
            if let Some(pivot) = ech.insert(row) {
                if pivot == aug_col {
                    return Ok(None);
                }
            }
        }
        ech.reduce_fully();
        let mut x = vec![Rat::zero(); self.cols];
        for (pivot, row) in ech.rows() {
            if let Some((_, v)) = row.iter().find(|(c, _)| *c == aug_col) {
                x[pivot] = v.clone();
            }
        }
        Ok(Some(x))
    }
}

/// Canonical kernel basis read off an RREF.
pub fn kernel_from_rref(rref: &Echelon, cols: usize) -> Vec<SparseVec> {
    let pivots = rref.pivot_cols();
    let is_pivot = {
        let mut flags = vec![false; cols];
        for &p in &pivots {
            flags[p] = true;
        }
        flags
    };
    // free column -> entries at pivot coordinates
    let mut per_free: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for (pivot, row) in rref.rows() {
        for (c, v) in row.iter().skip(1) {
            if !is_pivot[*c] {
                per_free.entry(*c).or_default().push((pivot, -v.clone()));
            }
        }
    }
    let mut out = Vec::with_capacity(cols - pivots.len());
    for free in (0..cols).filter(|c| !is_pivot[*c]) {
        let mut v = per_free.remove(&free).unwrap_or_default();
        v.push((free, Rat::one()));
        v.sort_by_key(|(c, _)| *c);
        out.push(v);
    }
    out
}

/// Extends a basis of `span(bnd)` to a basis of `span(z)`, returning the
/// extension vectors (members of `z`, in input order). Their classes form a
/// basis of the quotient `span(z)/span(bnd)`.
///
/// Errors with [`Error::NotInSpan`] if some `bnd` vector is outside
/// `span(z)`.
pub fn cokernel_complement(z: &[SparseVec], bnd: &[SparseVec]) -> Result<Vec<SparseVec>, Error> {
    let mut z_span = Echelon::new();
    for v in z {
        z_span.insert(v.clone());
    }
    for v in bnd {
        if !z_span.reduce(v.clone()).is_empty() {
            return Err(Error::NotInSpan);
        }
    }
    Ok(complement_unchecked(z, bnd, usize::MAX))
}

/// As [`cokernel_complement`] but skips the containment check and stops
/// after `expected` extension vectors have been found.
pub(crate) fn complement_unchecked(
    z: &[SparseVec],
    bnd: &[SparseVec],
    expected: usize,
) -> Vec<SparseVec> {
    let mut span = Echelon::new();
    for v in bnd {
        span.insert(v.clone());
    }
    let mut out = Vec::new();
    for v in z {
        if out.len() >= expected {
            break;
        }
        if span.insert(v.clone()).is_some() {
            out.push(v.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: usize, cols: usize, data: &[i64]) -> RatMatrix {
        assert_eq!(data.len(), rows * cols);
        let mut m = RatMatrix::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = data[r * cols + c];
                if v != 0 {
                    m.set(r, c, rat(v));
                }
            }
        }
        m
    }

    #[test]
    fn rational_parse_and_format() {
        assert_eq!(parse_rat("3/4").unwrap(), ratq(3, 4));
        assert_eq!(parse_rat("-2/6").unwrap(), ratq(-1, 3));
        assert_eq!(parse_rat(" 5 ").unwrap(), rat(5));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(fmt_rat(&ratq(4, 2)), "2");
        assert_eq!(fmt_rat(&ratq(-1, 2)), "-1/2");
    }

    #[test]
    fn rank_basics() {
        assert_eq!(RatMatrix::identity(2).rank(), 2);
        assert_eq!(RatMatrix::zero(3, 4).rank(), 0);
        let m = dense(3, 3, &[1, 2, 3, 2, 4, 6, 1, 1, 1]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernel_basics() {
        let z = RatMatrix::zero(2, 3);
        let k = z.kernel_basis();
        assert_eq!(k.len(), 3);
        for (i, v) in k.iter().enumerate() {
            assert_eq!(v, &vec![(i, rat(1))]);
        }
        assert!(RatMatrix::identity(4).kernel_basis().is_empty());

        let m = dense(2, 3, &[1, 0, 1, 0, 1, 1]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        let v = sparse_to_dense(&k[0], 3);
        assert_eq!(m.mul_vec(&v).unwrap(), vec![rat(0), rat(0)]);
    }

    #[test]
    fn rank_nullity_and_transpose() {
        let m = dense(
            4,
            5,
            &[1, 2, 0, 0, 3, 0, 0, 1, 1, 0, 1, 2, 1, 1, 3, 0, 0, 0, 0, 0],
        );
        assert_eq!(m.rank() + m.kernel_basis().len(), m.cols());
        assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let b = vec![rat(3), ratq(1, 2)];
        assert_eq!(RatMatrix::identity(2).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(RatMatrix::zero(2, 2).solve(&b).unwrap(), None);
        assert_eq!(
            RatMatrix::zero(2, 2).solve(&[rat(0), rat(0)]).unwrap(),
            Some(vec![rat(0), rat(0)])
        );
        assert!(matches!(
            RatMatrix::identity(2).solve(&[rat(1)]),
            Err(Error::ShapeMismatch(2, 1))
        ));
    }

    #[test]
    fn solve_is_exact() {
        let m = dense(3, 3, &[2, 1, 0, 0, 3, 1, 1, 0, 1]);
        let b = vec![ratq(1, 3), rat(2), ratq(-5, 7)];
        let x = m.solve(&b).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), b);
    }

    #[test]
    fn solve_underdetermined_sets_free_vars_to_zero() {
        let m = dense(1, 3, &[1, 1, 1]);
        let x = m.solve(&[rat(5)]).unwrap().unwrap();
        assert_eq!(x, vec![rat(5), rat(0), rat(0)]);
    }

    #[test]
    fn cokernel_complement_basics() {
        let z: Vec<SparseVec> = vec![vec![(0, rat(1))], vec![(1, rat(1))]];
        assert_eq!(cokernel_complement(&z, &[]).unwrap().len(), 2);
        assert!(cokernel_complement(&z, &z).unwrap().is_empty());

        let outside: Vec<SparseVec> = vec![vec![(2, rat(1))]];
        assert_eq!(cokernel_complement(&z, &outside), Err(Error::NotInSpan));

        let bnd: Vec<SparseVec> = vec![vec![(0, rat(1)), (1, rat(-1))]];
        let ext = cokernel_complement(&z, &bnd).unwrap();
        assert_eq!(ext.len(), 1);
        assert_eq!(ext[0], vec![(0, rat(1))]);
    }

    #[test]
    fn matrix_product() {
        let a = dense(2, 3, &[1, 2, 0, 0, 1, 1]);
        let b = dense(3, 2, &[1, 0, 0, 1, 1, 1]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, dense(2, 2, &[1, 2, 1, 2]));
        assert!(a.mul(&a).is_err());
    }

    #[test]
    fn seeded_rank_transpose_200() {
        // deterministic LCG-filled 200x200 sparse matrix
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut m = RatMatrix::zero(200, 200);
        for _ in 0..900 {
            let r = (next() % 200) as usize;
            let c = (next() % 200) as usize;
            let v = (next() % 9) as i64 - 4;
            if v != 0 {
                m.set(r, c, rat(v));
            }
        }
        let r1 = m.rank();
        let r2 = m.transpose().rank();
        assert_eq!(r1, r2);
        assert_eq!(m.rank() + m.kernel_basis().len(), m.cols());
    }
}
