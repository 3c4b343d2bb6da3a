//! Infinitesimal deformations: odd `H²` generators, obstruction brackets,
//! jump-deformation detection, and the deformation diagram.
//!
//! A first-order family `d + tδ` needs `δ` odd of degree 2 with `D(δ) = 0`;
//! when all brackets `[δ^i, δ^j]` vanish the infinitesimal family is already
//! miniversal. Jump targets are found by classifying `d + tδ` at several
//! exact rational `t` and requiring agreement; the classifier is
//! zero-pattern and scaling based, so finitely many samples decide the
//! generic label.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::coder::{bracket, Cochain};
use crate::cohomology::Complex;
use crate::graded::{GradedBasis, Parity};
use crate::linalg::{rat, ratq, Rat};
use crate::moduli::{
    canonical_codifferential, canonical_coeffs, classify, CoeffVector, OrbitLabel,
};
use crate::Error;

/// Default evaluation points for jump detection; chosen off `|t| = 1` to
/// dodge accidental coincidences.
pub fn default_samples() -> Vec<Rat> {
    vec![rat(1), rat(-1), ratq(1, 2), rat(3), ratq(-2, 3)]
}

/// Deterministic basis of `H²_odd` for one of the six algebras.
pub fn odd_h2_generators(label: OrbitLabel) -> Result<Vec<Cochain>, Error> {
    if label == OrbitLabel::Zero {
        return Err(Error::NotCodifferential);
    }
    let basis = GradedBasis::one_one();
    let mut cx = Complex::new(basis, canonical_codifferential(label));
    cx.parity_representatives(2, Parity::Odd)
}

/// An obstruction bracket `[δ^i, δ^j]` labelled by its index pair.
pub type ObstructionBracket = ((usize, usize), Cochain);

/// All pairwise brackets `[δ^i, δ^j]`, `i ≤ j`.
pub fn obstruction_brackets(generators: &[Cochain]) -> Result<Vec<ObstructionBracket>, Error> {
    let basis = GradedBasis::one_one();
    let mut out = Vec::new();
    for i in 0..generators.len() {
        for j in i..generators.len() {
            out.push(((i, j), bracket(&basis, &generators[i], &generators[j])?));
        }
    }
    Ok(out)
}

/// Labels reached by `d + tδ` over the sample set, base label excluded.
///
/// Every sample of one generator must classify identically; a sample that
/// leaves the Maurer–Cartan variety is an obstruction error (possible only
/// when some `[δ,δ] != 0`).
pub fn jump_targets(label: OrbitLabel, samples: &[Rat]) -> Result<BTreeSet<OrbitLabel>, Error> {
    if label == OrbitLabel::Zero {
        return Err(Error::NotCodifferential);
    }
    let base = canonical_coeffs(label);
    let mut targets = BTreeSet::new();
    for generator in odd_h2_generators(label)? {
        let direction = CoeffVector::from_cochain(&generator)?;
        let mut seen: Option<OrbitLabel> = None;
        for t in samples {
            if t.is_zero() {
                continue;
            }
            let at_t = base.add(&direction.scale(t));
            if !crate::moduli::is_codifferential(&at_t) {
                return Err(Error::Obstruction(format!(
                    "{label} + t*({direction}) leaves the variety at t = {t}"
                )));
            }
            let found = classify(&at_t)?;
            match seen {
                None => seen = Some(found),
                Some(prev) if prev == found => {}
                Some(prev) => {
                    return Err(Error::SamplingInconsistency(format!(
                        "{label}: got {prev} and {found} along the same generator"
                    )))
                }
            }
        }
        if let Some(found) = seen {
            if found != label {
                targets.insert(found);
            }
        }
    }
    Ok(targets)
}

/// Infinitesimal family `base + Σ t_i · directions_i` in coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationFamily {
    pub base: CoeffVector,
    pub directions: Vec<CoeffVector>,
}

impl DeformationFamily {
    pub fn to_text(&self) -> String {
        let mut out = format!("({})", self.base);
        for (i, dir) in self.directions.iter().enumerate() {
            out.push_str(&format!(" + t{}*({})", i + 1, dir));
        }
        out
    }
}

/// Full deformation record of one algebra.
#[derive(Debug, Clone)]
pub struct DeformationRecord {
    pub base: OrbitLabel,
    /// Basis of `H²_odd` as deterministic representative cocycles.
    pub generators: Vec<Cochain>,
    /// Pairwise obstruction brackets, `i ≤ j`.
    pub obstructions: Vec<ObstructionBracket>,
    pub family: DeformationFamily,
    pub jump_targets: BTreeSet<OrbitLabel>,
}

impl DeformationRecord {
    /// All obstruction brackets vanish, so the infinitesimal deformation is
    /// miniversal as it stands.
    pub fn miniversal_is_infinitesimal(&self) -> bool {
        self.obstructions.iter().all(|(_, c)| c.is_zero())
    }
}

pub fn deformation_record(label: OrbitLabel, samples: &[Rat]) -> Result<DeformationRecord, Error> {
    let generators = odd_h2_generators(label)?;
    let obstructions = obstruction_brackets(&generators)?;
    let directions = generators
        .iter()
        .map(CoeffVector::from_cochain)
        .collect::<Result<Vec<_>, _>>()?;
    let family = DeformationFamily {
        base: canonical_coeffs(label),
        directions,
    };
    let jumps = jump_targets(label, samples)?;
    Ok(DeformationRecord {
        base: label,
        generators,
        obstructions,
        family,
        jump_targets: jumps,
    })
}

/// Directed jump-deformation diagram over the orbit labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliDiagram {
    pub nodes: Vec<OrbitLabel>,
    pub edges: Vec<(OrbitLabel, OrbitLabel)>,
}

impl ModuliDiagram {
    /// Graphviz rendering; jumps are dashed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph moduli {\n");
        for n in &self.nodes {
            out.push_str(&format!("  {n};\n"));
        }
        for (from, to) in &self.edges {
            out.push_str(&format!("  {from} -> {to} [style=dashed];\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, Error> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("bad diagram JSON: {e}")))
    }
}

/// Builds the diagram from jump targets over the default samples. The zero
/// structure sits outside the six-orbit picture; `include_zero` adds it as
/// an isolated node.
pub fn moduli_diagram(include_zero: bool) -> Result<ModuliDiagram, Error> {
    moduli_diagram_with(include_zero, &default_samples())
}

pub fn moduli_diagram_with(include_zero: bool, samples: &[Rat]) -> Result<ModuliDiagram, Error> {
    let mut nodes: Vec<OrbitLabel> = OrbitLabel::nonzero().to_vec();
    if include_zero {
        nodes.push(OrbitLabel::Zero);
    }
    let mut edges = Vec::new();
    for &label in OrbitLabel::nonzero().iter() {
        for target in jump_targets(label, samples)? {
            edges.push((label, target));
        }
    }
    edges.sort();
    Ok(ModuliDiagram { nodes, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coder::coboundary;
    use crate::cohomology::Complex;

    fn parse(text: &str) -> Cochain {
        Cochain::parse(&GradedBasis::one_one(), text).unwrap()
    }

    #[test]
    fn generators_match_known_spans() {
        // d5: span contains ψ^{ee}_f
        let gens = odd_h2_generators(OrbitLabel::D5).unwrap();
        assert_eq!(gens.len(), 1);
        let basis = GradedBasis::one_one();
        let mut cx = Complex::new(basis, canonical_codifferential(OrbitLabel::D5));
        assert!(cx.class_in_span(&parse("phi[ee->f]"), &gens).unwrap());

        // d6: span contains ψ^{ef}_e - ψ^{fe}_e - ψ^{ff}_f
        let gens = odd_h2_generators(OrbitLabel::D6).unwrap();
        assert_eq!(gens.len(), 1);
        let basis = GradedBasis::one_one();
        let mut cx = Complex::new(basis, canonical_codifferential(OrbitLabel::D6));
        let displayed = parse("phi[ef->e] - phi[fe->e] - phi[ff->f]");
        assert!(cx.is_cocycle(&displayed).unwrap());
        assert!(cx.class_in_span(&displayed, &gens).unwrap());

        // d1 has no odd H²
        assert!(odd_h2_generators(OrbitLabel::D1).unwrap().is_empty());
        assert!(odd_h2_generators(OrbitLabel::Zero).is_err());
    }

    #[test]
    fn generators_are_nontrivial_cocycles() {
        for label in OrbitLabel::nonzero() {
            let basis = GradedBasis::one_one();
            let mut cx = Complex::new(basis, canonical_codifferential(label));
            for g in odd_h2_generators(label).unwrap() {
                assert!(cx.is_cocycle(&g).unwrap(), "{label}");
                assert!(!cx.is_coboundary(&g).unwrap(), "{label}");
            }
        }
    }

    #[test]
    fn obstruction_examples() {
        // [ψ^{ee}_f, ψ^{ee}_f] = 0: no slot of (e,e) matches target f
        let obs = obstruction_brackets(&[parse("phi[ee->f]")]).unwrap();
        assert_eq!(obs.len(), 1);
        assert!(obs[0].1.is_zero());

        // the d6 generator is d5's cochain, and [d5, d5] = 0
        let delta = parse("phi[ef->e] - phi[fe->e] - phi[ff->f]");
        let obs = obstruction_brackets(&[delta]).unwrap();
        assert!(obs[0].1.is_zero());

        assert!(obstruction_brackets(&[]).unwrap().is_empty());
    }

    #[test]
    fn family_brackets_vanish_identically() {
        // [d + tδ, d + tδ] is quadratic in t; vanishing at 3 points makes
        // it identically zero
        let basis = GradedBasis::one_one();
        for label in [OrbitLabel::D5, OrbitLabel::D6] {
            let d = canonical_codifferential(label);
            for delta in odd_h2_generators(label).unwrap() {
                for t in [rat(1), rat(2), ratq(-1, 3)] {
                    let dt = d.cochain().add(&delta.scale(&t)).unwrap();
                    assert!(bracket(&basis, &dt, &dt).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn jump_examples() {
        let samples = vec![rat(1), ratq(1, 2), rat(-3)];
        assert_eq!(
            jump_targets(OrbitLabel::D5, &samples).unwrap(),
            BTreeSet::from([OrbitLabel::D1])
        );
        let samples = vec![rat(1), rat(2), ratq(-1, 2)];
        assert_eq!(
            jump_targets(OrbitLabel::D6, &samples).unwrap(),
            BTreeSet::from([OrbitLabel::D1])
        );
        assert!(jump_targets(OrbitLabel::D2, &default_samples())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn diagram_matches_deformation_picture() {
        let diagram = moduli_diagram(false).unwrap();
        assert_eq!(diagram.nodes.len(), 6);
        assert_eq!(
            diagram.edges,
            vec![
                (OrbitLabel::D5, OrbitLabel::D1),
                (OrbitLabel::D6, OrbitLabel::D1)
            ]
        );
        // no self-edges, d1 is a sink, d2..d4 isolated
        assert!(diagram.edges.iter().all(|(a, b)| a != b));
        for isolated in [OrbitLabel::D2, OrbitLabel::D3, OrbitLabel::D4] {
            assert!(diagram
                .edges
                .iter()
                .all(|(a, b)| *a != isolated && *b != isolated));
        }

        // reproducible under a different sample set
        let other = moduli_diagram_with(false, &[rat(7), ratq(-5, 9), rat(11)]).unwrap();
        assert_eq!(other.edges, diagram.edges);

        let with_zero = moduli_diagram(true).unwrap();
        assert_eq!(with_zero.nodes.len(), 7);
        assert_eq!(with_zero.edges, diagram.edges);
    }

    #[test]
    fn diagram_serialization() {
        let diagram = moduli_diagram(false).unwrap();
        let dot = diagram.to_dot();
        assert!(dot.contains("d5 -> d1 [style=dashed];"));
        assert!(dot.contains("d6 -> d1 [style=dashed];"));
        assert_eq!(
            ModuliDiagram::from_json(&diagram.to_json()).unwrap(),
            diagram
        );
    }

    #[test]
    fn records_are_miniversal_here() {
        for label in OrbitLabel::nonzero() {
            let record = deformation_record(label, &default_samples()).unwrap();
            assert!(record.miniversal_is_infinitesimal(), "{label}");
            assert_eq!(record.generators.len(), record.family.directions.len());
            match label {
                OrbitLabel::D5 | OrbitLabel::D6 => {
                    assert_eq!(record.jump_targets, BTreeSet::from([OrbitLabel::D1]));
                    assert_eq!(record.generators.len(), 1);
                }
                _ => assert!(record.jump_targets.is_empty(), "{label}"),
            }
        }
    }

    #[test]
    fn record_family_text() {
        let record = deformation_record(OrbitLabel::D5, &default_samples()).unwrap();
        let text = record.family.to_text();
        assert!(text.starts_with("(-1,1,-1,0) + t1*("));
    }

    #[test]
    fn generator_cocycle_identity() {
        // D(δ) = 0 restated through the coboundary directly
        let basis = GradedBasis::one_one();
        for label in [OrbitLabel::D5, OrbitLabel::D6] {
            let d = canonical_codifferential(label);
            for g in odd_h2_generators(label).unwrap() {
                assert!(coboundary(&basis, &d, &g).unwrap().is_zero());
            }
        }
    }
}
