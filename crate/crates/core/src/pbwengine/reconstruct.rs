use std::collections::BTreeMap;

use super::conditions::check_pbw2prime;
use super::deformation::{deformation_from_potential, Deformation};
use crate::error::{Error, Result};
use crate::exactalg::Scalar;
use crate::potentials::{cycle_classes, primitive_decomposition, CycleClass, Potential};
use crate::quiverpath::{strip_left, Path};

/// The common coefficients `λ̂_σ` over cycle classes of one length `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaTable {
    pub degree: usize,
    pub values: BTreeMap<CycleClass, Scalar>,
}

impl LambdaTable {
    pub fn value(&self, sigma: &CycleClass) -> Option<&Scalar> {
        self.values.get(sigma)
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(Scalar::is_zero)
    }
}

/// Two rotations of one cycle whose coefficients `λ_{a,q}` (the coefficient
/// of `q` in `φ_{j−1}(rₐ)`, where `a` closes `q` into the cycle) differ.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaWitness {
    pub degree: usize,
    pub class: CycleClass,
    pub first: (usize, Path, Scalar),
    pub second: (usize, Path, Scalar),
}

#[derive(Clone, Debug, PartialEq)]
pub enum LambdaOutcome {
    Table(LambdaTable),
    Inconsistent(LambdaWitness),
}

impl LambdaOutcome {
    pub fn table(&self) -> Option<&LambdaTable> {
        match self {
            LambdaOutcome::Table(t) => Some(t),
            LambdaOutcome::Inconsistent(_) => None,
        }
    }
}

/// Splits a cycle into its last-applied arrow `a` and the rest `q`, so that
/// the cycle is `a·q`.
fn close_split(d: &Deformation, rotation: &Path) -> (usize, Path) {
    let q = d.base().quiver();
    let a = *rotation.arrows().last().expect("cycle of positive length");
    let rest = strip_left(q, rotation, a).expect("nonempty").expect("ends with a");
    (a, rest)
}

/// Collects `λ̂_σ` for all cycle classes of length `j`, checking that every
/// rotation of a cycle gives the same coefficient.
pub fn lambda_table(d: &Deformation, j: usize) -> Result<LambdaOutcome> {
    let n = d.degree();
    if j == 0 || j > n {
        return Err(Error::Degree(format!("lambda degree {j} outside 1..={n}")));
    }
    let q = d.base().quiver();
    let field = d.base().field();
    let mut values = BTreeMap::new();
    for sigma in cycle_classes(q, j) {
        let rep = sigma.representative();
        let mut seen: Option<(usize, Path, Scalar)> = None;
        for i in 0..rep.len() {
            let rot = rep.rotation(q, i);
            let (a, rest) = close_split(d, &rot);
            let lambda = d.phi_of(a).coefficient(&rest);
            match &seen {
                None => seen = Some((a, rest, lambda)),
                Some((_, _, first)) if *first == lambda => {}
                Some(first) => {
                    return Ok(LambdaOutcome::Inconsistent(LambdaWitness {
                        degree: j,
                        class: sigma.clone(),
                        first: first.clone(),
                        second: (a, rest, lambda),
                    }))
                }
            }
        }
        let value = seen.map(|s| s.2).unwrap_or_else(|| field.zero());
        if !value.is_zero() {
            values.insert(sigma, value);
        }
    }
    Ok(LambdaOutcome::Table(LambdaTable { degree: j, values }))
}

/// Recovers the unique `W′ = W_N + ⋯ + W₁` with `φ(rₐ) = −∂ₐW′`, where
/// `W_j = Σ_σ −(λ̂_σ/m) σ` over classes `σ = τ^m` with `m` maximal.
pub fn reconstruct_potential(d: &Deformation) -> Result<Potential> {
    let q = d.base().quiver();
    let field = d.base().field();
    let n = d.degree();
    let residues = check_pbw2prime(d)?;
    if let Some((e, r)) = residues.iter().enumerate().find(|(_, r)| !r.is_zero()) {
        return Err(Error::Pbw2PrimeViolated(format!(
            "residue at vertex {} is {}",
            q.vertex_name(e),
            r.display(q)
        )));
    }
    if field.divides_factorial(n) {
        return Err(Error::CharacteristicDividesFactorial {
            characteristic: field.characteristic(),
            n,
        });
    }
    let mut w = Potential::zero(field);
    for j in 1..=n {
        let table = match lambda_table(d, j)? {
            LambdaOutcome::Table(t) => t,
            LambdaOutcome::Inconsistent(wit) => {
                return Err(Error::LambdaInconsistent(format!(
                    "degree {j}: coefficient of {} in phi({}) is {} but coefficient of {} in phi({}) is {}",
                    wit.first.1.display(q),
                    q.arrow_name(wit.first.0),
                    wit.first.2,
                    wit.second.1.display(q),
                    q.arrow_name(wit.second.0),
                    wit.second.2
                )))
            }
        };
        for (sigma, lambda) in table.values {
            let (_, m) = primitive_decomposition(q, &sigma);
            let m = field.from_i64(m as i64);
            let c = -&(&lambda * &m.inv().expect("characteristic exceeds N"));
            w.add_class(sigma, c);
        }
    }
    let check = deformation_from_potential(d.base(), &w)?;
    if check.phi() != d.phi() {
        let a = (0..q.arrow_count()).find(|&a| check.phi_of(a) != d.phi_of(a)).unwrap_or(0);
        return Err(Error::RoundTrip(format!(
            "phi({}) is {} but the reconstructed potential gives {}",
            q.arrow_name(a),
            d.phi_of(a).display(q),
            check.phi_of(a).display(q)
        )));
    }
    Ok(w)
}
