//! Coboundary matrices per degree, cohomology dimensions with the even/odd
//! split, and representative cocycles.
//!
//! Degree-`n` cochains are coordinatized in the canonical order (target
//! label first, then source word lexicographically), so every matrix, rank,
//! kernel vector, and representative below is deterministic. Cohomology is
//! computed over ℚ; the six canonical structures have integer structure
//! constants, so kernel and image dimensions agree with those over ℂ.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coder::{coboundary, BasisCochain, Cochain, Codifferential};
use crate::graded::{enumerate_indices, GradedBasis, Parity};
use crate::linalg::{complement_unchecked, kernel_from_rref, RatMatrix, SparseVec};
use crate::Error;

/// All degree-`n` basis cochains in canonical order.
pub fn basis_cochains(basis: &GradedBasis, n: usize) -> Vec<BasisCochain> {
    let words = enumerate_indices(basis, n);
    let mut out = Vec::with_capacity(words.len() * basis.len());
    for target in 0..basis.len() {
        for word in &words {
            out.push(BasisCochain::new(word.clone(), target as u8));
        }
    }
    out
}

/// `dim C^n = |B|^{n+1}`.
pub fn dim_cochains(basis: &GradedBasis, n: usize) -> usize {
    basis.len().pow(n as u32 + 1)
}

/// Position of a basis cochain in the canonical order of its degree.
pub fn basis_cochain_index(basis: &GradedBasis, bc: &BasisCochain) -> usize {
    let words = basis.len().pow(bc.degree() as u32);
    bc.target() as usize * words + bc.source().lex_rank(basis)
}

/// The matrix of `D = [d,·]` from degree `n` to degree `n + 1`.
///
/// Column `j` holds the coordinates of `D(φ_j)` for the `j`-th canonical
/// basis cochain; rows are indexed by the canonical order one degree up.
#[derive(Debug, Clone)]
pub struct CoboundaryMatrix {
    degree: usize,
    matrix: RatMatrix,
}

impl CoboundaryMatrix {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }
}

pub fn coboundary_matrix(
    basis: &GradedBasis,
    d: &Codifferential,
    n: usize,
) -> Result<CoboundaryMatrix, Error> {
    let rows = dim_cochains(basis, n + 1);
    let cols = dim_cochains(basis, n);
    let mut matrix = RatMatrix::zero(rows, cols);
    for (j, bc) in basis_cochains(basis, n).into_iter().enumerate() {
        let image = coboundary(basis, d, &Cochain::basis(bc))?;
        for (out_bc, coeff) in image.terms() {
            matrix.set(basis_cochain_index(basis, out_bc), j, coeff.clone());
        }
    }
    Ok(CoboundaryMatrix { degree: n, matrix })
}

/// The cochain complex of one codifferential, with cached matrices and
/// ranks. Ranks are computed per parity block; `d` is odd, so the blocks
/// hit disjoint row sets and the full rank is their sum.
pub struct Complex {
    basis: GradedBasis,
    d: Codifferential,
    matrices: BTreeMap<usize, CoboundaryMatrix>,
    parity_ranks: BTreeMap<(usize, Parity), usize>,
}

impl Complex {
    pub fn new(basis: GradedBasis, d: Codifferential) -> Self {
        Complex {
            basis,
            d,
            matrices: BTreeMap::new(),
            parity_ranks: BTreeMap::new(),
        }
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn codifferential(&self) -> &Codifferential {
        &self.d
    }

    pub fn dim(&self, n: usize) -> usize {
        dim_cochains(&self.basis, n)
    }

    pub fn matrix(&mut self, n: usize) -> Result<&CoboundaryMatrix, Error> {
        if !self.matrices.contains_key(&n) {
            let m = coboundary_matrix(&self.basis, &self.d, n)?;
            self.matrices.insert(n, m);
        }
        Ok(&self.matrices[&n])
    }

    /// Column indices of the degree-`n` basis cochains of one parity.
    fn parity_columns(&self, n: usize, parity: Parity) -> Result<Vec<usize>, Error> {
        let mut out = Vec::new();
        for (j, bc) in basis_cochains(&self.basis, n).iter().enumerate() {
            if bc.parity(&self.basis)? == parity {
                out.push(j);
            }
        }
        Ok(out)
    }

    /// Rank of `D_n` restricted to the columns of one parity.
    pub fn parity_rank(&mut self, n: usize, parity: Parity) -> Result<usize, Error> {
        if let Some(&r) = self.parity_ranks.get(&(n, parity)) {
            return Ok(r);
        }
        let wanted = self.parity_columns(n, parity)?;
        let columns = self.matrix(n)?.matrix().columns();
        let mut ech = crate::linalg::Echelon::new();
        for j in wanted {
            ech.insert(columns[j].clone());
        }
        let r = ech.rank();
        self.parity_ranks.insert((n, parity), r);
        Ok(r)
    }

    /// Rank of the full `D_n`.
    pub fn rank(&mut self, n: usize) -> Result<usize, Error> {
        Ok(self.parity_rank(n, Parity::Even)? + self.parity_rank(n, Parity::Odd)?)
    }

    /// `(h^n, h^n_even, h^n_odd)` from the rank formula
    /// `h^n = dim C^n - rank D_n - rank D_{n-1}`.
    pub fn h(&mut self, n: usize) -> Result<(usize, usize, usize), Error> {
        let dim_even = self.parity_columns(n, Parity::Even)?.len();
        let dim_odd = self.parity_columns(n, Parity::Odd)?.len();
        let rank_even = self.parity_rank(n, Parity::Even)?;
        let rank_odd = self.parity_rank(n, Parity::Odd)?;
        // D_{n-1} maps each parity into the opposite one
        let (below_into_even, below_into_odd) = if n == 0 {
            (0, 0)
        } else {
            (
                self.parity_rank(n - 1, Parity::Odd)?,
                self.parity_rank(n - 1, Parity::Even)?,
            )
        };
        let h_even = dim_even - rank_even - below_into_even;
        let h_odd = dim_odd - rank_odd - below_into_odd;
        Ok((h_even + h_odd, h_even, h_odd))
    }

    fn vector_to_cochain(&self, n: usize, v: &SparseVec) -> Cochain {
        let cochains = basis_cochains(&self.basis, n);
        Cochain::from_terms(n, v.iter().map(|(i, x)| (cochains[*i].clone(), x.clone())))
            .expect("kernel vector indexes degree-n cochains")
    }

    /// Coordinates of a degree-`n` cochain in the canonical order.
    pub fn cochain_to_vector(&self, phi: &Cochain) -> SparseVec {
        let mut v: SparseVec = phi
            .terms()
            .map(|(bc, coeff)| (basis_cochain_index(&self.basis, bc), coeff.clone()))
            .collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    /// Deterministic representative cocycles whose classes form a basis of
    /// `H^n`: the canonical kernel basis of `D_n` extended past the image
    /// of `D_{n-1}`.
    pub fn representatives(&mut self, n: usize) -> Result<Vec<Cochain>, Error> {
        let (h, _, _) = self.h(n)?;
        if h == 0 {
            return Ok(Vec::new());
        }
        let cols = self.dim(n);
        let kernel = {
            let m = self.matrix(n)?.matrix();
            kernel_from_rref(&m.rref(), cols)
        };
        let image: Vec<SparseVec> = if n == 0 {
            Vec::new()
        } else {
            self.matrix(n - 1)?
                .matrix()
                .columns()
                .into_iter()
                .filter(|c| !c.is_empty())
                .collect()
        };
        let reps = complement_unchecked(&kernel, &image, h);
        Ok(reps.iter().map(|v| self.vector_to_cochain(n, v)).collect())
    }

    /// Representatives of the parity-`p` part of `H^n`, computed on the
    /// parity sub-block of the complex.
    pub fn parity_representatives(
        &mut self,
        n: usize,
        parity: Parity,
    ) -> Result<Vec<Cochain>, Error> {
        let (_, h_even, h_odd) = self.h(n)?;
        let h_p = if parity == Parity::Even {
            h_even
        } else {
            h_odd
        };
        if h_p == 0 {
            return Ok(Vec::new());
        }
        let sub_cols = self.parity_columns(n, parity)?;
        let sub_index: BTreeMap<usize, usize> = sub_cols
            .iter()
            .enumerate()
            .map(|(sub, full)| (*full, sub))
            .collect();
        let kernel_sub: Vec<SparseVec> = {
            let columns = self.matrix(n)?.matrix().columns();
            let rows = self.matrix(n)?.matrix().rows();
            let picked: Vec<SparseVec> = sub_cols.iter().map(|j| columns[*j].clone()).collect();
            RatMatrix::from_columns(rows, &picked).kernel_basis()
        };
        // boundaries landing in this parity come from the opposite one
        let image_sub: Vec<SparseVec> = if n == 0 {
            Vec::new()
        } else {
            let below = self.parity_columns(n - 1, parity.flip())?;
            let columns = self.matrix(n - 1)?.matrix().columns();
            below
                .iter()
                .map(|j| &columns[*j])
                .filter(|c| !c.is_empty())
                .map(|c| c.iter().map(|(i, x)| (sub_index[i], x.clone())).collect())
                .collect()
        };
        let reps = complement_unchecked(&kernel_sub, &image_sub, h_p);
        Ok(reps
            .iter()
            .map(|v| {
                let full: SparseVec = v.iter().map(|(i, x)| (sub_cols[*i], x.clone())).collect();
                self.vector_to_cochain(n, &full)
            })
            .collect())
    }

    /// Whether a degree-`n` cochain is a coboundary, decided by solving
    /// against `D_{n-1}`.
    pub fn is_coboundary(&mut self, phi: &Cochain) -> Result<bool, Error> {
        let n = phi.degree();
        if phi.is_zero() {
            return Ok(true);
        }
        if n == 0 {
            return Ok(false);
        }
        let v = self.cochain_to_vector(phi);
        let m = self.matrix(n - 1)?.matrix();
        let dense = crate::linalg::sparse_to_dense(&v, m.rows());
        Ok(m.solve(&dense)?.is_some())
    }

    /// Whether a cochain is a cocycle.
    pub fn is_cocycle(&mut self, phi: &Cochain) -> Result<bool, Error> {
        Ok(coboundary(&self.basis, &self.d, phi)?.is_zero())
    }

    /// Whether the class of `phi` lies in the span of the classes of
    /// `reps`, i.e. `phi ∈ span(reps) + Im D_{n-1}`. Meaningful when `phi`
    /// is a cocycle.
    pub fn class_in_span(&mut self, phi: &Cochain, reps: &[Cochain]) -> Result<bool, Error> {
        let n = phi.degree();
        let mut columns: Vec<SparseVec> = Vec::new();
        if n > 0 {
            columns.extend(self.matrix(n - 1)?.matrix().columns());
        }
        for r in reps {
            columns.push(self.cochain_to_vector(r));
        }
        let target = self.cochain_to_vector(phi);
        let m = RatMatrix::from_columns(self.dim(n), &columns);
        let dense = crate::linalg::sparse_to_dense(&target, self.dim(n));
        Ok(m.solve(&dense)?.is_some())
    }

    /// Full per-degree report up to `n_max`.
    pub fn report(&mut self, algebra: &str, n_max: usize) -> Result<CohomologyReport, Error> {
        let mut rows = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let (h, h_even, h_odd) = self.h(n)?;
            let representatives = self
                .representatives(n)?
                .iter()
                .map(|c| c.to_text(&self.basis))
                .collect();
            rows.push(CohomologyRow {
                n,
                dim: self.dim(n),
                rank: self.rank(n)?,
                h,
                h_even,
                h_odd,
                representatives,
            });
        }
        Ok(CohomologyReport {
            algebra: algebra.to_string(),
            n_max,
            rows,
        })
    }
}

/// One degree of a [`CohomologyReport`]. `rank` is the rank of `D_n`;
/// representatives are canonical cochain strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyRow {
    pub n: usize,
    pub dim: usize,
    pub rank: usize,
    pub h: usize,
    pub h_even: usize,
    pub h_odd: usize,
    pub representatives: Vec<String>,
}

/// Per-degree cohomology record of one algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub algebra: String,
    pub n_max: usize,
    pub rows: Vec<CohomologyRow>,
}

impl CohomologyReport {
    pub fn h_values(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.h).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, Error> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("bad report JSON: {e}")))
    }

    /// CSV with the same columns minus representatives.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("algebra,n,dim,rank,h,h_even,h_odd\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                self.algebra, r.n, r.dim, r.rank, r.h, r.h_even, r.h_odd
            ));
        }
        out
    }

    pub fn to_text(&self, parity_split: bool) -> String {
        let mut out = format!(
            "cohomology of {} up to degree {}\n",
            self.algebra, self.n_max
        );
        for r in &self.rows {
            let split = if parity_split {
                format!(" h_even={} h_odd={}", r.h_even, r.h_odd)
            } else {
                String::new()
            };
            let reps = if r.representatives.is_empty() {
                String::new()
            } else {
                format!("  [{}]", r.representatives.join("; "))
            };
            out.push_str(&format!(
                "n={} dim={} rank={} h={}{}{}\n",
                r.n, r.dim, r.rank, r.h, split, reps
            ));
        }
        out
    }
}
