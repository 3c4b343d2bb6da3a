//! The coderivation calculus: basis cochains `φ^I_i`, insertion composition,
//! the Gerstenhaber bracket, the coboundary `D = [d, ·]`, and the auxiliary
//! operators `λ^I`, `θ`, `Ch`.
//!
//! A degree-`n` cochain is a linear map `W^{⊗n} → W`, identified with a
//! coderivation of the tensor coalgebra. For basis cochains the composition
//! collapses to the insertion formula
//!
//! ```text
//! φ^I_i ∘ φ^J_j = Σ_k (-1)^{|i_1..i_{k-1}| |φ^J_j|} δ^{i_k}_j φ^{(I,J,k)}_i
//! ```
//!
//! where `(I,J,k)` substitutes `J` for the `k`-th letter of `I`. The sign is
//! the Koszul sign of moving the operator past the prefix, nothing else.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use crate::graded::{koszul_sign, GradedBasis, MultiIndex, Parity};
use crate::linalg::{fmt_rat, parse_rat, Rat};
use crate::Error;

/// `φ^I_i`: the cochain sending the word `w_I` to `w_i` and every other
/// word of the same length to zero.
///
/// Field order is `(target, source)` so the derived `Ord` is the canonical
/// one: by target label first, then by source word lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisCochain {
    target: u8,
    source: MultiIndex,
}

impl BasisCochain {
    pub fn new(source: MultiIndex, target: u8) -> Self {
        BasisCochain { target, source }
    }

    /// Builds `φ^src_tgt` from label text, e.g. `("ef", 'e')`.
    pub fn from_labels(basis: &GradedBasis, src: &str, tgt: char) -> Result<Self, Error> {
        Ok(BasisCochain {
            target: basis.index_of(tgt)? as u8,
            source: MultiIndex::from_labels(basis, src)?,
        })
    }

    pub fn source(&self) -> &MultiIndex {
        &self.source
    }

    pub fn target(&self) -> u8 {
        self.target
    }

    pub fn degree(&self) -> usize {
        self.source.len()
    }

    /// `|I| + |i|`; odd basis cochains are conventionally written `ψ^I_i`.
    pub fn parity(&self, basis: &GradedBasis) -> Result<Parity, Error> {
        Ok(self.source.parity(basis)? + basis.parity(self.target as usize)?)
    }

    pub fn to_text(&self, basis: &GradedBasis) -> String {
        format!(
            "phi[{}->{}]",
            self.source.to_text(basis),
            basis.label(self.target as usize)
        )
    }
}

/// Parity content of a cochain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Homogeneous(Parity),
    Mixed,
}

/// A rational linear combination of basis cochains of one fixed degree.
///
/// The zero cochain of each degree is distinct: matrix shapes depend on the
/// degree even when the term map is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    terms: BTreeMap<BasisCochain, Rat>,
}

impl Cochain {
    pub fn zero(degree: usize) -> Self {
        Cochain {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(bc: BasisCochain) -> Self {
        let mut c = Cochain::zero(bc.degree());
        c.add_term(bc, Rat::one());
        c
    }

    pub fn from_terms<I>(degree: usize, terms: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (BasisCochain, Rat)>,
    {
        let mut c = Cochain::zero(degree);
        for (bc, coeff) in terms {
            if bc.degree() != degree {
                return Err(Error::ShapeMismatch(degree, bc.degree()));
            }
            c.add_term(bc, coeff);
        }
        Ok(c)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisCochain, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, bc: &BasisCochain) -> Rat {
        self.terms.get(bc).cloned().unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, bc: BasisCochain, coeff: Rat) {
        debug_assert_eq!(bc.degree(), self.degree);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(bc) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, rhs: &Cochain) -> Result<Cochain, Error> {
        if self.degree != rhs.degree {
            return Err(Error::ShapeMismatch(self.degree, rhs.degree));
        }
        let mut out = self.clone();
        for (bc, coeff) in &rhs.terms {
            out.add_term(bc.clone(), coeff.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Cochain) -> Result<Cochain, Error> {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &Rat) -> Cochain {
        if c.is_zero() {
            return Cochain::zero(self.degree);
        }
        let terms = self
            .terms
            .iter()
            .map(|(bc, v)| (bc.clone(), v * c))
            .collect();
        Cochain {
            degree: self.degree,
            terms,
        }
    }

    pub fn neg(&self) -> Cochain {
        self.scale(&-Rat::one())
    }

    pub fn homogeneity(&self, basis: &GradedBasis) -> Result<Homogeneity, Error> {
        let mut seen: Option<Parity> = None;
        for bc in self.terms.keys() {
            let p = bc.parity(basis)?;
            match seen {
                None => seen = Some(p),
                Some(q) if q == p => {}
                Some(_) => return Ok(Homogeneity::Mixed),
            }
        }
        Ok(match seen {
            None => Homogeneity::Zero,
            Some(p) => Homogeneity::Homogeneous(p),
        })
    }

    /// The part of the given parity. Even + odd parts recover the cochain.
    pub fn parity_part(&self, basis: &GradedBasis, parity: Parity) -> Result<Cochain, Error> {
        let mut out = Cochain::zero(self.degree);
        for (bc, coeff) in &self.terms {
            if bc.parity(basis)? == parity {
                out.add_term(bc.clone(), coeff.clone());
            }
        }
        Ok(out)
    }

    /// The part whose terms all target the given basis label (the `E`/`F`
    /// split of the 1|1 space is `target_part(0)` / `target_part(1)`).
    pub fn target_part(&self, target: u8) -> Cochain {
        let mut out = Cochain::zero(self.degree);
        for (bc, coeff) in &self.terms {
            if bc.target == target {
                out.add_term(bc.clone(), coeff.clone());
            }
        }
        out
    }

    /// Plain-text rendering, terms in canonical order, e.g.
    /// `phi[ef->e] - 2*phi[fe->e]`. The zero cochain prints as `0`.
    pub fn to_text(&self, basis: &GradedBasis) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (bc, coeff)) in self.terms.iter().enumerate() {
            let neg = coeff.is_negative();
            let abs = coeff.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() {
                let _ = write!(out, "{}*", fmt_rat(&abs));
            }
            out.push_str(&bc.to_text(basis));
        }
        out
    }

    /// Parses the plain-text syntax: signed terms `[coef*]phi[SRC->TGT]`
    /// with rational coefficients `p/q`; `psi` is accepted as an alias for
    /// `phi`; whitespace is ignored. All terms must share one degree.
    pub fn parse(basis: &GradedBasis, text: &str) -> Result<Cochain, Error> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty cochain".into()));
        }
        let mut degree: Option<usize> = None;
        let mut out: Option<Cochain> = None;
        let mut rest = compact.as_str();
        let mut sign = Rat::one();
        if let Some(r) = rest.strip_prefix('-') {
            sign = -Rat::one();
            rest = r;
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        }
        loop {
            // one term: [coef*]phi[SRC->TGT], ending at the closing bracket
            let close = rest
                .find(']')
                .ok_or_else(|| Error::Parse(format!("unterminated term in `{rest}`")))?;
            let (term_text, tail) = (&rest[..=close], &rest[close + 1..]);
            let (coeff_text, body) = match term_text.find('*') {
                Some(p) => (&term_text[..p], &term_text[p + 1..]),
                None => ("", term_text),
            };
            let coeff = if coeff_text.is_empty() {
                Rat::one()
            } else {
                parse_rat(coeff_text)?
            };
            let body = body
                .strip_prefix("phi")
                .or_else(|| body.strip_prefix("psi"))
                .ok_or_else(|| Error::Parse(format!("expected phi[..] in `{term_text}`")))?;
            let body = body
                .strip_prefix('[')
                .and_then(|b| b.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("expected [SRC->TGT] in `{term_text}`")))?;
            let (src, tgt) = body
                .split_once("->")
                .ok_or_else(|| Error::Parse(format!("expected `->` in `{term_text}`")))?;
            let mut tgt_chars = tgt.chars();
            let tgt_char = tgt_chars
                .next()
                .ok_or_else(|| Error::Parse("missing target label".into()))?;
            if tgt_chars.next().is_some() {
                return Err(Error::Parse(format!("target must be one label: `{tgt}`")));
            }
            let bc = BasisCochain::from_labels(basis, src, tgt_char)?;
            match degree {
                None => degree = Some(bc.degree()),
                Some(d) if d == bc.degree() => {}
                Some(d) => return Err(Error::ShapeMismatch(d, bc.degree())),
            }
            let acc = out.get_or_insert_with(|| Cochain::zero(bc.degree()));
            acc.add_term(bc, &sign * coeff);

            if tail.is_empty() {
                break;
            }
            sign = match tail.chars().next() {
                Some('-') => -Rat::one(),
                Some('+') => Rat::one(),
                _ => return Err(Error::Parse(format!("expected `+` or `-` before `{tail}`"))),
            };
            rest = &tail[1..];
            if rest.is_empty() {
                return Err(Error::Parse("dangling sign".into()));
            }
        }
        Ok(out.expect("at least one term parsed"))
    }
}

/// Insertion composition `φ ∘ ψ`, bilinear over the rationals.
///
/// Degree is `p + q - 1`; with `p = 0` the sum over slots is empty and the
/// result is the zero cochain of degree `q - 1`. Both degrees zero is
/// rejected; the result would have degree `-1`.
pub fn compose(basis: &GradedBasis, phi: &Cochain, psi: &Cochain) -> Result<Cochain, Error> {
    let (p, q) = (phi.degree(), psi.degree());
    if p == 0 && q == 0 {
        return Err(Error::EmptyComposition);
    }
    let mut out = Cochain::zero(p + q - 1);
    for (pbc, pcoeff) in phi.terms() {
        for (qbc, qcoeff) in psi.terms() {
            let q_parity = qbc.parity(basis)?;
            let mut prefix = Parity::Even;
            for (k, &entry) in pbc.source().entries().iter().enumerate() {
                if entry == qbc.target() {
                    let sign = koszul_sign(prefix, q_parity);
                    let spliced = pbc.source().splice(k, qbc.source());
                    let coeff = pcoeff * qcoeff * Rat::from_integer(sign.into());
                    out.add_term(BasisCochain::new(spliced, pbc.target()), coeff);
                }
                prefix = prefix + basis.parity(entry as usize)?;
            }
        }
    }
    Ok(out)
}

/// Gerstenhaber bracket `[φ,ψ] = φ∘ψ - (-1)^{|φ||ψ|} ψ∘φ` for
/// parity-homogeneous cochains.
pub fn bracket(basis: &GradedBasis, phi: &Cochain, psi: &Cochain) -> Result<Cochain, Error> {
    let p_par = match phi.homogeneity(basis)? {
        Homogeneity::Mixed => return Err(Error::MixedParity),
        Homogeneity::Homogeneous(p) => p,
        Homogeneity::Zero => Parity::Even,
    };
    let q_par = match psi.homogeneity(basis)? {
        Homogeneity::Mixed => return Err(Error::MixedParity),
        Homogeneity::Homogeneous(p) => p,
        Homogeneity::Zero => Parity::Even,
    };
    let left = compose(basis, phi, psi)?;
    let right = compose(basis, psi, phi)?;
    if koszul_sign(p_par, q_par) < 0 {
        left.add(&right)
    } else {
        left.sub(&right)
    }
}

/// An odd degree-2 cochain with `[d,d] = 0`: a graded associative structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codifferential {
    cochain: Cochain,
}

impl Codifferential {
    pub fn new(basis: &GradedBasis, cochain: Cochain) -> Result<Self, Error> {
        if cochain.degree() != 2 {
            return Err(Error::NotOddQuadratic);
        }
        match cochain.homogeneity(basis)? {
            Homogeneity::Homogeneous(Parity::Odd) | Homogeneity::Zero => {}
            _ => return Err(Error::NotOddQuadratic),
        }
        if !bracket(basis, &cochain, &cochain)?.is_zero() {
            return Err(Error::NotCodifferential);
        }
        Ok(Codifferential { cochain })
    }

    pub fn cochain(&self) -> &Cochain {
        &self.cochain
    }
}

/// Hochschild coboundary `D(φ) = [d, φ]`. Raises degree by 1 and flips
/// parity, `d` being odd.
pub fn coboundary(
    basis: &GradedBasis,
    d: &Codifferential,
    phi: &Cochain,
) -> Result<Cochain, Error> {
    bracket(basis, d.cochain(), phi)
}

/// `λ^I`: prepends `I` to every source word. Degree rises by `ℓ(I)`, parity
/// shifts by `|I|`, coefficients are untouched.
pub fn lambda_op(prefix: &MultiIndex, phi: &Cochain) -> Cochain {
    let mut out = Cochain::zero(phi.degree() + prefix.len());
    for (bc, coeff) in phi.terms() {
        out.add_term(
            BasisCochain::new(prefix.concat(bc.source()), bc.target()),
            coeff.clone(),
        );
    }
    out
}

/// The Decleene map `θ = λ^{ef} - λ^{fe}` on the 1|1 basis.
pub fn decleene_theta(phi: &Cochain) -> Cochain {
    let ef = MultiIndex::from_entries(vec![0, 1]);
    let fe = MultiIndex::from_entries(vec![1, 0]);
    lambda_op(&ef, phi)
        .sub(&lambda_op(&fe, phi))
        .expect("equal degrees")
}

/// Target species of a Decleene cocycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Species {
    E,
    F,
}

/// The Decleene cocycle `Ch^n`: `θ^k φ_e` / `θ^k φ^e_e` for `n = 2k` /
/// `2k+1`, and the `f`-target analogues.
pub fn decleene_cocycle(n: usize, species: Species) -> Cochain {
    let target = match species {
        Species::E => 0,
        Species::F => 1,
    };
    let seed_source = if n.is_multiple_of(2) {
        MultiIndex::empty()
    } else {
        MultiIndex::from_entries(vec![0])
    };
    let mut c = Cochain::basis(BasisCochain::new(seed_source, target));
    for _ in 0..n / 2 {
        c = decleene_theta(&c);
    }
    c
}
