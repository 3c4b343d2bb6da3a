//! Runnable consistency suites: the cross-module invariants bundled for the
//! CLI `selfcheck` command and reused by the test harness.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::coder::{bracket, Cochain};
use crate::cohomology::{basis_cochains, dim_cochains, Complex};
use crate::deform::moduli_diagram;
use crate::graded::{enumerate_indices, GradedBasis, Parity};
use crate::linalg::{ratq, Rat};
use crate::moduli::{
    automorphism_action, canonical_codifferential, canonical_coeffs, classify, solution_branches,
    OrbitLabel,
};
use crate::Error;

/// Expected `h^0..h^4` of the six algebras.
pub const TABLE1: [(OrbitLabel, [usize; 5]); 6] = [
    (OrbitLabel::D1, [1, 0, 0, 0, 0]),
    (OrbitLabel::D2, [2, 1, 1, 1, 1]),
    (OrbitLabel::D3, [0, 0, 0, 0, 0]),
    (OrbitLabel::D4, [0, 0, 0, 0, 0]),
    (OrbitLabel::D5, [2, 2, 2, 2, 2]),
    (OrbitLabel::D6, [1, 1, 2, 2, 1]),
];

/// Expected `h^n(d6)` by `n mod 4`.
pub const D6_PATTERN: [usize; 4] = [1, 1, 2, 2];

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl SuiteResult {
    fn pass(name: &'static str, detail: impl Into<String>) -> Self {
        SuiteResult {
            name,
            passed: true,
            detail: detail.into(),
        }
    }

    fn fail(name: &'static str, detail: impl Into<String>) -> Self {
        SuiteResult {
            name,
            passed: false,
            detail: detail.into(),
        }
    }
}

/// Runs every suite against the six canonical structures. The `d6-pattern`
/// suite joins in once `max_degree >= 12`.
pub fn run(max_degree: usize) -> Result<Vec<SuiteResult>, Error> {
    let named: Vec<(String, Cochain)> = OrbitLabel::nonzero()
        .iter()
        .map(|&l| (l.to_string(), canonical_coeffs(l).to_cochain()))
        .collect();
    let mut out = vec![
        dim_growth_suite(max_degree.max(14)),
        d_squared_suite(&named, max_degree.min(8))?,
        jacobi_suite(100)?,
        table1_suite()?,
        orbit_invariance_suite(100)?,
        diagram_suite()?,
    ];
    if max_degree >= 12 {
        out.push(d6_pattern_suite(max_degree.min(12))?);
    }
    Ok(out)
}

/// `dim C^n = 2^{n+1}` on the 1|1 basis, with the word count enumerated.
pub fn dim_growth_suite(max_degree: usize) -> SuiteResult {
    let b = GradedBasis::one_one();
    for n in 0..=max_degree {
        let words = enumerate_indices(&b, n).len();
        if words != 1 << n || dim_cochains(&b, n) != 1 << (n + 1) {
            return SuiteResult::fail("dim-growth", format!("dim C^{n} != 2^{}", n + 1));
        }
    }
    SuiteResult::pass(
        "dim-growth",
        format!("dim C^n = 2^(n+1) up to degree {max_degree}"),
    )
}

/// `D² = 0` on every basis cochain up to `max_degree`, for each named
/// structure. Takes raw cochains so corrupted fixtures can demonstrate a
/// failure.
pub fn d_squared_suite(
    named: &[(String, Cochain)],
    max_degree: usize,
) -> Result<SuiteResult, Error> {
    let b = GradedBasis::one_one();
    let mut checked = 0usize;
    for (name, d) in named {
        for n in 0..=max_degree {
            for bc in basis_cochains(&b, n) {
                let once = bracket(&b, d, &Cochain::basis(bc.clone()))?;
                let twice = bracket(&b, d, &once)?;
                if !twice.is_zero() {
                    return Ok(SuiteResult::fail(
                        "d-squared",
                        format!("D²({}) != 0 for {name}", bc.to_text(&b)),
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(SuiteResult::pass(
        "d-squared",
        format!("{checked} basis cochains up to degree {max_degree}"),
    ))
}

fn random_rat(rng: &mut StdRng, allow_zero: bool) -> Rat {
    loop {
        let numer = rng.gen_range(-6i64..=6);
        if numer == 0 && !allow_zero {
            continue;
        }
        let denom = rng.gen_range(1i64..=4);
        return ratq(numer, denom);
    }
}

fn random_homogeneous(rng: &mut StdRng, b: &GradedBasis, degree: usize, parity: Parity) -> Cochain {
    let mut c = Cochain::zero(degree);
    for bc in basis_cochains(b, degree) {
        if bc.parity(b).unwrap() == parity && rng.gen_bool(0.6) {
            let term = Cochain::basis(bc).scale(&random_rat(rng, false));
            c = c.add(&term).unwrap();
        }
    }
    c
}

/// Graded Jacobi `[φ,[ψ,χ]] = [[φ,ψ],χ] + (-1)^{|φ||ψ|}[ψ,[φ,χ]]` on random
/// homogeneous triples of degrees 1..=3.
pub fn jacobi_suite(triples: usize) -> Result<SuiteResult, Error> {
    let b = GradedBasis::one_one();
    let mut rng = StdRng::seed_from_u64(0x6a61636f6269);
    for i in 0..triples {
        let pick = |rng: &mut StdRng| {
            let degree = rng.gen_range(1usize..=3);
            let parity = if rng.gen_bool(0.5) {
                Parity::Even
            } else {
                Parity::Odd
            };
            (random_homogeneous(rng, &b, degree, parity), parity)
        };
        let (phi, p_par) = pick(&mut rng);
        let (psi, q_par) = pick(&mut rng);
        let (chi, _) = pick(&mut rng);
        let lhs = bracket(&b, &phi, &bracket(&b, &psi, &chi)?)?;
        let first = bracket(&b, &bracket(&b, &phi, &psi)?, &chi)?;
        let second = bracket(&b, &psi, &bracket(&b, &phi, &chi)?)?;
        let sign = crate::graded::koszul_sign(p_par, q_par);
        let rhs = first.add(&second.scale(&Rat::from_integer(sign.into())))?;
        if lhs != rhs {
            return Ok(SuiteResult::fail(
                "jacobi",
                format!("failed on random triple #{i}"),
            ));
        }
    }
    Ok(SuiteResult::pass(
        "jacobi",
        format!("{triples} random triples"),
    ))
}

/// Recomputes `h^0..h^4` of all six algebras against the fixed table.
pub fn table1_suite() -> Result<SuiteResult, Error> {
    for (label, expected) in TABLE1 {
        let computed = table1_row(label)?;
        if computed != expected {
            return Ok(SuiteResult::fail(
                "table1",
                format!("{label}: computed {computed:?}, expected {expected:?}"),
            ));
        }
    }
    Ok(SuiteResult::pass("table1", "36 dimensions match"))
}

/// `h^0..h^4` of one algebra.
pub fn table1_row(label: OrbitLabel) -> Result<[usize; 5], Error> {
    let b = GradedBasis::one_one();
    let mut cx = Complex::new(b, canonical_codifferential(label));
    let mut row = [0usize; 5];
    for (n, slot) in row.iter_mut().enumerate() {
        *slot = cx.h(n)?.0;
    }
    Ok(row)
}

/// `classify` is constant along orbits: random branch points pushed through
/// random even automorphisms keep their label.
pub fn orbit_invariance_suite(count: usize) -> Result<SuiteResult, Error> {
    let mut rng = StdRng::seed_from_u64(0x6f72626974);
    let branches = solution_branches();
    for i in 0..count {
        let branch = &branches[rng.gen_range(0..branches.len())];
        let params: Vec<Rat> = (0..branch.arity)
            .map(|_| random_rat(&mut rng, false))
            .collect();
        let c = branch.at(&params);
        let a = random_rat(&mut rng, false);
        let b = random_rat(&mut rng, false);
        let moved = automorphism_action(&a, &b, &c)?;
        if classify(&moved)? != classify(&c)? {
            return Ok(SuiteResult::fail(
                "orbit-invariance",
                format!("sample #{i}: label changed under (a,b) = ({a},{b})"),
            ));
        }
    }
    Ok(SuiteResult::pass(
        "orbit-invariance",
        format!("{count} random automorphisms"),
    ))
}

/// The deformation diagram has exactly the two dashed edges into `d1`.
pub fn diagram_suite() -> Result<SuiteResult, Error> {
    let diagram = moduli_diagram(false)?;
    let expected = vec![
        (OrbitLabel::D5, OrbitLabel::D1),
        (OrbitLabel::D6, OrbitLabel::D1),
    ];
    if diagram.edges != expected {
        return Ok(SuiteResult::fail(
            "diagram",
            format!("edges {:?}", diagram.edges),
        ));
    }
    if diagram.edges.iter().any(|(a, b)| a == b) {
        return Ok(SuiteResult::fail("diagram", "self-edge found".to_string()));
    }
    Ok(SuiteResult::pass("diagram", "edges d5->d1, d6->d1"))
}

/// `h^n(d6)` follows the period-4 pattern `1,1,2,2` up to `max_degree`.
pub fn d6_pattern_suite(max_degree: usize) -> Result<SuiteResult, Error> {
    let b = GradedBasis::one_one();
    let mut cx = Complex::new(b, canonical_codifferential(OrbitLabel::D6));
    for n in 0..=max_degree {
        let (h, _, _) = cx.h(n)?;
        if h != D6_PATTERN[n % 4] {
            return Ok(SuiteResult::fail(
                "d6-pattern",
                format!("h^{n}(d6) = {h}, expected {}", D6_PATTERN[n % 4]),
            ));
        }
    }
    Ok(SuiteResult::pass(
        "d6-pattern",
        format!("period-4 pattern holds to degree {max_degree}"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moduli::CoeffVector;

    #[test]
    fn all_suites_pass_at_default_depth() {
        for suite in run(8).unwrap() {
            assert!(suite.passed, "{}: {}", suite.name, suite.detail);
        }
    }

    #[test]
    fn corrupted_sign_convention_fails_d_squared() {
        // (1,1,0,0) is not a Maurer-Cartan solution, the shape a flipped
        // sign in d3 would produce; the suite must notice
        let bad = CoeffVector::from_ints(1, 1, 0, 0).to_cochain();
        let result = d_squared_suite(&[("corrupted-d3".into(), bad)], 3).unwrap();
        assert!(!result.passed);
        assert!(result.detail.contains("corrupted-d3"));
    }

    #[test]
    fn table1_rows() {
        assert_eq!(table1_row(OrbitLabel::D5).unwrap(), [2, 2, 2, 2, 2]);
        assert_eq!(table1_row(OrbitLabel::D6).unwrap(), [1, 1, 2, 2, 1]);
    }
}
