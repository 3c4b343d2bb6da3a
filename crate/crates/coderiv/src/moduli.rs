//! The moduli space of 1|1-dimensional graded associative structures:
//! Maurer–Cartan conditions on odd degree-2 cochains, classification under
//! even automorphisms into the six orbits `d1..d6` (plus the zero
//! structure), algebra-side multiplication tables, and structural
//! predicates.
//!
//! An odd element of `C²` on `W = ⟨e,f⟩` is
//! `d = x ψ^{ff}_f + y ψ^{ef}_e + z ψ^{fe}_e + w ψ^{ee}_f`; expanding
//! `½[d,d]` through the insertion formula fixes which coefficient is `y`
//! and which is `z`. Even automorphisms act diagonally, `g(e) = a e`,
//! `g(f) = b f`, giving `(x,y,z,w) ↦ (bx, by, bz, (a²/b)w)`; over ℂ every
//! nonzero scalar is a square, so equivalence is decidable by rational
//! zero-pattern and ratio arguments alone.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coder::{bracket, BasisCochain, Cochain, Codifferential};
use crate::graded::{GradedBasis, MultiIndex};
use crate::linalg::{fmt_rat, parse_rat, rat, Rat};
use crate::Error;

fn one_one() -> GradedBasis {
    GradedBasis::one_one()
}

/// The four basis cochains carrying an odd element of `C²`, in the
/// coefficient order `(x, y, z, w)`.
fn coeff_basis() -> [BasisCochain; 4] {
    let b = one_one();
    [
        BasisCochain::from_labels(&b, "ff", 'f').unwrap(),
        BasisCochain::from_labels(&b, "ef", 'e').unwrap(),
        BasisCochain::from_labels(&b, "fe", 'e').unwrap(),
        BasisCochain::from_labels(&b, "ee", 'f').unwrap(),
    ]
}

/// Coefficients `(x, y, z, w)` of `ψ^{ff}_f, ψ^{ef}_e, ψ^{fe}_e, ψ^{ee}_f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffVector {
    pub x: Rat,
    pub y: Rat,
    pub z: Rat,
    pub w: Rat,
}

impl CoeffVector {
    pub fn new(x: Rat, y: Rat, z: Rat, w: Rat) -> Self {
        CoeffVector { x, y, z, w }
    }

    pub fn from_ints(x: i64, y: i64, z: i64, w: i64) -> Self {
        CoeffVector::new(rat(x), rat(y), rat(z), rat(w))
    }

    pub fn zero() -> Self {
        CoeffVector::from_ints(0, 0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero() && self.w.is_zero()
    }

    pub fn add(&self, o: &CoeffVector) -> CoeffVector {
        CoeffVector::new(
            &self.x + &o.x,
            &self.y + &o.y,
            &self.z + &o.z,
            &self.w + &o.w,
        )
    }

    pub fn scale(&self, t: &Rat) -> CoeffVector {
        CoeffVector::new(&self.x * t, &self.y * t, &self.z * t, &self.w * t)
    }

    /// Parses `x,y,z,w` with rational entries `p/q`.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!(
                "expected 4 comma-separated rationals, got {}",
                parts.len()
            )));
        }
        Ok(CoeffVector::new(
            parse_rat(parts[0])?,
            parse_rat(parts[1])?,
            parse_rat(parts[2])?,
            parse_rat(parts[3])?,
        ))
    }

    pub fn to_cochain(&self) -> Cochain {
        let [bff, bef, bfe, bee] = coeff_basis();
        Cochain::from_terms(
            2,
            [
                (bff, self.x.clone()),
                (bef, self.y.clone()),
                (bfe, self.z.clone()),
                (bee, self.w.clone()),
            ],
        )
        .expect("all four have degree 2")
    }

    /// Inverse of [`CoeffVector::to_cochain`]: fails if the cochain has any
    /// term outside the four odd degree-2 basis cochains.
    pub fn from_cochain(c: &Cochain) -> Result<Self, Error> {
        if c.degree() != 2 {
            return Err(Error::NotOddQuadratic);
        }
        let [bff, bef, bfe, bee] = coeff_basis();
        let allowed = [&bff, &bef, &bfe, &bee];
        for (bc, _) in c.terms() {
            if !allowed.contains(&bc) {
                return Err(Error::NotOddQuadratic);
            }
        }
        Ok(CoeffVector::new(
            c.coeff(&bff),
            c.coeff(&bef),
            c.coeff(&bfe),
            c.coeff(&bee),
        ))
    }

    pub fn to_codifferential(&self) -> Result<Codifferential, Error> {
        Codifferential::new(&one_one(), self.to_cochain())
    }
}

impl fmt::Display for CoeffVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{}",
            fmt_rat(&self.x),
            fmt_rat(&self.y),
            fmt_rat(&self.z),
            fmt_rat(&self.w)
        )
    }
}

/// Orbit of a Maurer–Cartan solution under even automorphisms. The zero
/// structure gets its own label so the classifier is total on the variety.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitLabel {
    Zero,
    D1,
    D2,
    D3,
    D4,
    D5,
    D6,
}

impl OrbitLabel {
    pub fn nonzero() -> [OrbitLabel; 6] {
        [
            OrbitLabel::D1,
            OrbitLabel::D2,
            OrbitLabel::D3,
            OrbitLabel::D4,
            OrbitLabel::D5,
            OrbitLabel::D6,
        ]
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OrbitLabel::Zero => "zero",
            OrbitLabel::D1 => "d1",
            OrbitLabel::D2 => "d2",
            OrbitLabel::D3 => "d3",
            OrbitLabel::D4 => "d4",
            OrbitLabel::D5 => "d5",
            OrbitLabel::D6 => "d6",
        };
        write!(f, "{s}")
    }
}

impl FromStr for OrbitLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "zero" | "0" => Ok(OrbitLabel::Zero),
            "d1" => Ok(OrbitLabel::D1),
            "d2" => Ok(OrbitLabel::D2),
            "d3" => Ok(OrbitLabel::D3),
            "d4" => Ok(OrbitLabel::D4),
            "d5" => Ok(OrbitLabel::D5),
            "d6" => Ok(OrbitLabel::D6),
            other => Err(Error::Parse(format!("unknown algebra label `{other}`"))),
        }
    }
}

/// Canonical coefficient vectors of the seven orbits.
pub fn canonical_coeffs(label: OrbitLabel) -> CoeffVector {
    match label {
        OrbitLabel::Zero => CoeffVector::from_ints(0, 0, 0, 0),
        OrbitLabel::D1 => CoeffVector::from_ints(-1, 1, -1, 1),
        OrbitLabel::D2 => CoeffVector::from_ints(1, 0, 0, 0),
        OrbitLabel::D3 => CoeffVector::from_ints(-1, 1, 0, 0),
        OrbitLabel::D4 => CoeffVector::from_ints(1, 0, 1, 0),
        OrbitLabel::D5 => CoeffVector::from_ints(-1, 1, -1, 0),
        OrbitLabel::D6 => CoeffVector::from_ints(0, 0, 0, 1),
    }
}

pub fn canonical_codifferential(label: OrbitLabel) -> Codifferential {
    canonical_coeffs(label)
        .to_codifferential()
        .expect("canonical vectors satisfy [d,d] = 0")
}

/// The six coefficients of `½[d,d]` on
/// `φ^{eff}_e, φ^{eee}_e, φ^{efe}_f, φ^{eef}_f, φ^{ffe}_e, φ^{fee}_f`,
/// computed through the bracket rather than transcribed. All six vanish
/// exactly on the Maurer–Cartan variety.
pub fn mc_conditions(c: &CoeffVector) -> [Rat; 6] {
    let b = one_one();
    let d = c.to_cochain();
    let half = Rat::new(1.into(), 2.into());
    let half_dd = bracket(&b, &d, &d)
        .expect("odd degree-2 cochains bracket cleanly")
        .scale(&half);
    let slot =
        |src: &str, tgt: char| half_dd.coeff(&BasisCochain::from_labels(&b, src, tgt).unwrap());
    [
        slot("eff", 'e'),
        slot("eee", 'e'),
        slot("efe", 'f'),
        slot("eef", 'f'),
        slot("ffe", 'e'),
        slot("fee", 'f'),
    ]
}

/// `[d,d] = 0`, checked on the whole bracket.
pub fn is_codifferential(c: &CoeffVector) -> bool {
    let b = one_one();
    let d = c.to_cochain();
    bracket(&b, &d, &d)
        .expect("odd degree-2 cochains bracket cleanly")
        .is_zero()
}

/// Conjugates a cochain by the diagonal even automorphism with the given
/// per-label scales: `g^*(φ^I_j) = (Π_k s_{I_k} / s_j) φ^I_j`.
pub fn conjugate_diagonal(
    basis: &GradedBasis,
    phi: &Cochain,
    scales: &[Rat],
) -> Result<Cochain, Error> {
    if scales.len() != basis.len() {
        return Err(Error::ShapeMismatch(basis.len(), scales.len()));
    }
    if scales.iter().any(|s| s.is_zero()) {
        return Err(Error::InvalidAutomorphism);
    }
    let terms = phi
        .terms()
        .map(|(bc, coeff)| {
            let mut factor = Rat::one();
            for &entry in bc.source().entries() {
                factor *= &scales[entry as usize];
            }
            factor /= &scales[bc.target() as usize];
            (bc.clone(), coeff * factor)
        })
        .collect::<Vec<_>>();
    Cochain::from_terms(phi.degree(), terms)
}

/// Action of the even automorphism `g(e) = a e, g(f) = b f` on
/// coefficients; in closed form `(x,y,z,w) ↦ (bx, by, bz, (a²/b)w)`.
pub fn automorphism_action(a: &Rat, b: &Rat, c: &CoeffVector) -> Result<CoeffVector, Error> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidAutomorphism);
    }
    let basis = one_one();
    let conjugated = conjugate_diagonal(&basis, &c.to_cochain(), &[a.clone(), b.clone()])?;
    CoeffVector::from_cochain(&conjugated)
}

/// Witness for equivalence over ℂ. `None` marks a free scale; when `b` is
/// free and `w` forces `a²`, the recorded value takes `b = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivWitness {
    pub b: Option<Rat>,
    pub a_squared: Option<Rat>,
}

impl EquivWitness {
    pub fn b_text(&self) -> String {
        self.b.as_ref().map_or_else(|| "free".into(), fmt_rat)
    }

    pub fn a_squared_text(&self) -> String {
        self.a_squared
            .as_ref()
            .map_or_else(|| "free".into(), fmt_rat)
    }
}

impl fmt::Display for EquivWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b={}, a^2={}", self.b_text(), self.a_squared_text())
    }
}

/// Decides whether complex `a, b != 0` exist with `c2 = action(a, b, c)`.
///
/// `b` is forced by any nonzero coordinate among `(x,y,z)` and must agree
/// across all three; the zero patterns must match. Given `b`, an `a` exists
/// iff `w` and `w'` are both zero or both nonzero: every nonzero complex
/// number is a square, so `a² = b w'/w` never obstructs.
pub fn are_equivalent(c: &CoeffVector, c2: &CoeffVector) -> Result<Option<EquivWitness>, Error> {
    if !is_codifferential(c) || !is_codifferential(c2) {
        return Err(Error::NotCodifferential);
    }
    let mut b: Option<Rat> = None;
    for (u, v) in [(&c.x, &c2.x), (&c.y, &c2.y), (&c.z, &c2.z)] {
        match (u.is_zero(), v.is_zero()) {
            (true, true) => {}
            (true, false) | (false, true) => return Ok(None),
            (false, false) => {
                let ratio = v / u;
                match &b {
                    None => b = Some(ratio),
                    Some(prev) if *prev == ratio => {}
                    Some(_) => return Ok(None),
                }
            }
        }
    }
    let a_squared = match (c.w.is_zero(), c2.w.is_zero()) {
        (true, true) => None,
        (true, false) | (false, true) => return Ok(None),
        (false, false) => {
            let b_val = b.clone().unwrap_or_else(Rat::one);
            Some(b_val * &c2.w / &c.w)
        }
    };
    Ok(Some(EquivWitness { b, a_squared }))
}

/// Total classifier on the Maurer–Cartan variety.
pub fn classify(c: &CoeffVector) -> Result<OrbitLabel, Error> {
    if !is_codifferential(c) {
        return Err(Error::NotCodifferential);
    }
    if c.is_zero() {
        return Ok(OrbitLabel::Zero);
    }
    for label in OrbitLabel::nonzero() {
        if are_equivalent(c, &canonical_coeffs(label))?.is_some() {
            return Ok(label);
        }
    }
    Err(Error::NoCanonicalMatch)
}

/// One closed-form branch of the Maurer–Cartan variety. Parameters are
/// nonzero rationals.
pub struct Branch {
    pub description: &'static str,
    pub label: OrbitLabel,
    pub arity: usize,
    make: fn(&[Rat]) -> CoeffVector,
}

impl Branch {
    pub fn at(&self, params: &[Rat]) -> CoeffVector {
        assert_eq!(params.len(), self.arity, "branch arity mismatch");
        assert!(
            params.iter().all(|p| !p.is_zero()),
            "branch parameters must be nonzero"
        );
        (self.make)(params)
    }
}

/// The branch decomposition of `[d,d] = 0`: with `w != 0` the conditions
/// force `y = -x, z = x` (orbits `d1`, `d6` by `x != 0` or `x = 0`); with
/// `w = 0` they reduce to `y ∈ {0,-x}`, `z ∈ {0,x}` (orbits `d2..d5`).
pub fn solution_branches() -> Vec<Branch> {
    vec![
        Branch {
            description: "w!=0, x!=0: (x,-x,x,w)",
            label: OrbitLabel::D1,
            arity: 2,
            make: |p| CoeffVector::new(p[0].clone(), -&p[0], p[0].clone(), p[1].clone()),
        },
        Branch {
            description: "w!=0, x=0: (0,0,0,w)",
            label: OrbitLabel::D6,
            arity: 1,
            make: |p| CoeffVector::new(rat(0), rat(0), rat(0), p[0].clone()),
        },
        Branch {
            description: "w=0: (x,0,0,0), x!=0",
            label: OrbitLabel::D2,
            arity: 1,
            make: |p| CoeffVector::new(p[0].clone(), rat(0), rat(0), rat(0)),
        },
        Branch {
            description: "w=0: (x,-x,0,0), x!=0",
            label: OrbitLabel::D3,
            arity: 1,
            make: |p| CoeffVector::new(p[0].clone(), -&p[0], rat(0), rat(0)),
        },
        Branch {
            description: "w=0: (x,0,x,0), x!=0",
            label: OrbitLabel::D4,
            arity: 1,
            make: |p| CoeffVector::new(p[0].clone(), rat(0), p[0].clone(), rat(0)),
        },
        Branch {
            description: "w=0: (x,-x,x,0), x!=0",
            label: OrbitLabel::D5,
            arity: 1,
            make: |p| CoeffVector::new(p[0].clone(), -&p[0], p[0].clone(), rat(0)),
        },
    ]
}

/// Multiplication table on `V = ⟨x, θ⟩` (`x` even, `θ` odd). The four
/// scalars are the only products the grading allows:
/// `x·x = xx·x`, `x·θ = xt·θ`, `θ·x = tx·θ`, `θ·θ = tt·x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraStructure {
    pub xx: Rat,
    pub xt: Rat,
    pub tx: Rat,
    pub tt: Rat,
}

impl AlgebraStructure {
    /// Product of `u = (u_x, u_θ)` and `v = (v_x, v_θ)` in coordinates.
    pub fn product(&self, u: (&Rat, &Rat), v: (&Rat, &Rat)) -> (Rat, Rat) {
        let x_part = u.0 * v.0 * &self.xx + u.1 * v.1 * &self.tt;
        let t_part = u.0 * v.1 * &self.xt + u.1 * v.0 * &self.tx;
        (x_part, t_part)
    }

    /// Associativity on all 8 basis triples.
    pub fn is_associative(&self) -> bool {
        let basis = [(rat(1), rat(0)), (rat(0), rat(1))];
        for a in &basis {
            for b in &basis {
                for c in &basis {
                    let ab = self.product((&a.0, &a.1), (&b.0, &b.1));
                    let bc = self.product((&b.0, &b.1), (&c.0, &c.1));
                    let left = self.product((&ab.0, &ab.1), (&c.0, &c.1));
                    let right = self.product((&a.0, &a.1), (&bc.0, &bc.1));
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The four products as text, e.g. `x^2 = -x`.
    pub fn table(&self) -> [String; 4] {
        let scalar = |c: &Rat, v: &str| -> String {
            if c.is_zero() {
                "0".to_string()
            } else if c.is_one() {
                v.to_string()
            } else if (-c).is_one() {
                format!("-{v}")
            } else {
                format!("{}*{v}", fmt_rat(c))
            }
        };
        [
            format!("x^2 = {}", scalar(&self.xx, "x")),
            format!("x*theta = {}", scalar(&self.xt, "theta")),
            format!("theta*x = {}", scalar(&self.tx, "theta")),
            format!("theta^2 = {}", scalar(&self.tt, "x")),
        ]
    }
}

/// `m = π⁻¹ ∘ d ∘ (π⊗π)` with `π(x) = f`, `π(θ) = e`. The map `π` is odd,
/// so `(π⊗π)(u⊗v) = (-1)^{|u|} π(u)⊗π(v)`.
pub fn to_algebra(c: &CoeffVector) -> Result<AlgebraStructure, Error> {
    if !is_codifferential(c) {
        return Err(Error::NotCodifferential);
    }
    let d = c.to_cochain();
    // V-basis order (x, θ); π sends them to labels (f, e) = indices (1, 0)
    let pi = [1u8, 0u8];
    let odd = [false, true];
    let mut scalars = [[Rat::zero(), Rat::zero()], [Rat::zero(), Rat::zero()]];
    for u in 0..2usize {
        for v in 0..2usize {
            let word = MultiIndex::from_entries(vec![pi[u], pi[v]]);
            let sign = if odd[u] { -Rat::one() } else { Rat::one() };
            // d on the word, read back through π⁻¹ (f -> x, e -> θ); the
            // grading leaves a single component per pair
            let mut value = Rat::zero();
            for (bc, coeff) in d.terms() {
                if bc.source() == &word {
                    value += coeff * &sign;
                }
            }
            scalars[u][v] = value;
        }
    }
    Ok(AlgebraStructure {
        xx: scalars[0][0].clone(),
        xt: scalars[0][1].clone(),
        tx: scalars[1][0].clone(),
        tt: scalars[1][1].clone(),
    })
}

/// Inverse of [`to_algebra`] on coefficient vectors.
fn from_algebra(a: &AlgebraStructure) -> CoeffVector {
    CoeffVector::new(a.xx.clone(), -&a.tx, a.xt.clone(), -&a.tt)
}

/// Structural predicates of a 1|1 multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraProperties {
    pub commutative: bool,
    /// Unit as coordinates `(u_x, u_θ)` when one exists.
    pub unit: Option<(Rat, Rat)>,
    pub simple: bool,
    pub nilpotent: bool,
    /// Whether `⟨x⟩` is a two-sided ideal.
    pub ideal_x: bool,
    /// Whether `⟨θ⟩` is a two-sided ideal.
    pub ideal_theta: bool,
}

pub fn algebra_properties(a: &AlgebraStructure) -> AlgebraProperties {
    let basis = [(rat(1), rat(0)), (rat(0), rat(1))];
    let commutative = basis.iter().all(|u| {
        basis
            .iter()
            .all(|v| a.product((&u.0, &u.1), (&v.0, &v.1)) == a.product((&v.0, &v.1), (&u.0, &u.1)))
    });

    // unit: solve u·v = v·u = v for v in {x, θ}; unknowns (α, β) with
    // u = αx + βθ, eight scalar equations in two unknowns
    let unit = {
        use crate::linalg::RatMatrix;
        let mut m = RatMatrix::zero(8, 2);
        let mut rhs = Vec::with_capacity(8);
        let mut row = 0;
        for v in &basis {
            for flip in [false, true] {
                let apply = |alpha: &Rat, beta: &Rat| {
                    if flip {
                        a.product((&v.0, &v.1), (alpha, beta))
                    } else {
                        a.product((alpha, beta), (&v.0, &v.1))
                    }
                };
                let at_alpha = apply(&rat(1), &rat(0));
                let at_beta = apply(&rat(0), &rat(1));
                m.set(row, 0, at_alpha.0);
                m.set(row, 1, at_beta.0);
                rhs.push(v.0.clone());
                m.set(row + 1, 0, at_alpha.1);
                m.set(row + 1, 1, at_beta.1);
                rhs.push(v.1.clone());
                row += 2;
            }
        }
        m.solve(&rhs)
            .expect("shapes match")
            .map(|sol| (sol[0].clone(), sol[1].clone()))
    };

    // in a 1|1 space each graded component is one-dimensional, so the only
    // candidate proper nonzero graded ideals are the two coordinate lines
    let ideal_x = a.xt.is_zero() && a.tx.is_zero();
    let ideal_theta = a.tt.is_zero();
    let simple = !ideal_x && !ideal_theta;

    // nilpotency: iterate S_{k+1} = span(m(A, S_k) ∪ m(S_k, A)) on
    // coordinate subspaces; powers stabilize within three steps here
    let step = |s: (bool, bool)| -> (bool, bool) {
        let mut has_x = false;
        let mut has_t = false;
        let gens: Vec<(Rat, Rat)> = [s.0.then(|| (rat(1), rat(0))), s.1.then(|| (rat(0), rat(1)))]
            .into_iter()
            .flatten()
            .collect();
        for g in &gens {
            for v in &basis {
                for p in [
                    a.product((&g.0, &g.1), (&v.0, &v.1)),
                    a.product((&v.0, &v.1), (&g.0, &g.1)),
                ] {
                    has_x |= !p.0.is_zero();
                    has_t |= !p.1.is_zero();
                }
            }
        }
        (has_x, has_t)
    };
    let mut power = (true, true);
    let mut nilpotent = false;
    for _ in 0..4 {
        power = step(power);
        if power == (false, false) {
            nilpotent = true;
            break;
        }
    }

    AlgebraProperties {
        commutative,
        unit,
        simple,
        nilpotent,
        ideal_x,
        ideal_theta,
    }
}

/// Opposite algebra: swaps the two arguments of `m`; the graded variant
/// additionally inserts the Koszul sign `(-1)^{|a||b|}`, which on a 1|1
/// table only flips `θ²`.
pub fn opposite(c: &CoeffVector, graded: bool) -> Result<CoeffVector, Error> {
    let a = to_algebra(c)?;
    let flipped = AlgebraStructure {
        xx: a.xx,
        xt: a.tx,
        tx: a.xt,
        tt: if graded { -a.tt } else { a.tt },
    };
    Ok(from_algebra(&flipped))
}
