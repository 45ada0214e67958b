use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::linalg::{Determinant, IndexSet, Matrix, Vector};
use crate::pmatrix::sign::reverses_sign;
use crate::scalar::{Scalar, TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Minors,
    SignReversal,
    Both,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Minors => "minors",
            Method::SignReversal => "sign-reversal",
            Method::Both => "both",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certificate<T> {
    /// A principal minor that is not strictly positive.
    NonPositiveMinor { set: IndexSet, value: T },
    /// Nonzero `x` with `x_i (Ax)_i <= 0` for all `i`.
    SignReversalWitness(Vector<T>),
    AllMinorsPositive { count: u64 },
    /// Every orthant LP was infeasible.
    NoSignReversal { orthants: u64 },
}

impl<T: Scalar> Certificate<T> {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Certificate::NonPositiveMinor { set, value } => json!({
                "kind": "minor",
                "indices": set,
                "value": value.to_json(),
            }),
            Certificate::SignReversalWitness(x) => json!({
                "kind": "witness",
                "x": x.to_json(),
            }),
            Certificate::AllMinorsPositive { count } => json!({
                "kind": "all_minors_positive",
                "count": count,
            }),
            Certificate::NoSignReversal { orthants } => json!({
                "kind": "no_sign_reversal",
                "orthants": orthants,
            }),
        }
    }

    pub fn witness(&self) -> Option<&Vector<T>> {
        match self {
            Certificate::SignReversalWitness(x) => Some(x),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PVerdict<T> {
    pub is_p: bool,
    pub method: Method,
    pub certificate: Certificate<T>,
    /// Second certificate from the other route when both ran.
    pub corroboration: Option<Certificate<T>>,
    pub diagnostics: Vec<String>,
}

impl<T: Scalar> PVerdict<T> {
    pub fn certificates(&self) -> impl Iterator<Item = &Certificate<T>> {
        std::iter::once(&self.certificate).chain(self.corroboration.iter())
    }

    /// The sign-reversal witness, whichever slot holds it.
    pub fn witness(&self) -> Option<&Vector<T>> {
        self.certificates().find_map(Certificate::witness)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = json!({
            "is_p": self.is_p,
            "method": self.method.as_str(),
            "certificate": self.certificate.to_json(),
            "diagnostics": self.diagnostics,
        });
        if let Some(c) = &self.corroboration {
            v["corroboration"] = c.to_json();
        }
        v
    }
}

impl<T: Determinant> PVerdict<T> {
    /// Recomputes every falsifying certificate against `a`.
    ///
    /// Minor certificates must recompute to a value that is not positive at
    /// tolerance; witnesses must be nonzero and pass `reverses_sign` at `1e-9`.
    pub fn certificates_sound(&self, a: &Matrix<T>) -> bool {
        self.certificates().all(|c| match c {
            Certificate::NonPositiveMinor { set, value } => match a.principal_submatrix(set) {
                Ok(sub) => {
                    let d = sub.determinant();
                    let scale = crate::linalg::hadamard_bound(
                        sub.rows().map(|r| r.iter().map(Scalar::as_f64).collect::<Vec<_>>().into_iter()),
                    );
                    d.is_nonpositive_at(scale) && d.close_to(value, TOL * scale.max(1.0))
                }
                Err(_) => false,
            },
            Certificate::SignReversalWitness(x) => {
                !x.is_zero_at(1.0) && reverses_sign(a, x, TOL).unwrap_or(false)
            }
            Certificate::AllMinorsPositive { .. } | Certificate::NoSignReversal { .. } => true,
        })
    }
}
