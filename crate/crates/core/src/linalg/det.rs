//! Determinants and principal-minor evaluation.
//!
//! Rational matrices are reduced to integer matrices by clearing each row's
//! denominators, then handed to fraction-free (Bareiss) elimination. The
//! integer path runs on checked `i128` first and restarts on `BigInt` when an
//! intermediate overflows. Float matrices use partial-pivoted elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Evaluates principal minors of one fixed matrix.
pub trait MinorSource<T>: Sync {
    /// Determinant of the principal submatrix on the given 0-based indices.
    fn minor(&self, idx: &[usize]) -> T;

    /// Magnitude scale used when deciding whether a minor is zero.
    fn scale(&self, idx: &[usize]) -> f64;
}

/// Scalars with a dedicated determinant path.
pub trait Determinant: Scalar {
    fn determinant(m: &Matrix<Self>) -> Self;
    fn minor_source(m: &Matrix<Self>) -> Box<dyn MinorSource<Self> + '_>;
}

impl<T: Determinant> Matrix<T> {
    pub fn determinant(&self) -> T {
        T::determinant(self)
    }
}

// ---------------------------------------------------------------------------
// float

impl Determinant for f64 {
    fn determinant(m: &Matrix<f64>) -> f64 {
        let n = m.n();
        let mut a: Vec<f64> = m.entries().to_vec();
        float_det_in_place(&mut a, n)
    }

    fn minor_source(m: &Matrix<f64>) -> Box<dyn MinorSource<f64> + '_> {
        Box::new(FloatMinors { m })
    }
}

fn float_det_in_place(a: &mut [f64], n: usize) -> f64 {
    let mut det = 1.0;
    for k in 0..n {
        let (p, pmax) = (k..n)
            .map(|r| (r, a[r * n + k].abs()))
            .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pmax == 0.0 {
            return 0.0;
        }
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            det = -det;
        }
        let pivot = a[k * n + k];
        det *= pivot;
        for i in k + 1..n {
            let f = a[i * n + k] / pivot;
            if f != 0.0 {
                for j in k + 1..n {
                    a[i * n + j] -= f * a[k * n + j];
                }
            }
        }
    }
    det
}

struct FloatMinors<'a> {
    m: &'a Matrix<f64>,
}

impl MinorSource<f64> for FloatMinors<'_> {
    fn minor(&self, idx: &[usize]) -> f64 {
        let k = idx.len();
        let mut a = Vec::with_capacity(k * k);
        for &i in idx {
            for &j in idx {
                a.push(self.m[(i, j)]);
            }
        }
        float_det_in_place(&mut a, k)
    }

    /// Hadamard bound of the submatrix.
    fn scale(&self, idx: &[usize]) -> f64 {
        hadamard_bound(idx.iter().map(|&i| idx.iter().map(move |&j| self.m[(i, j)])))
    }
}

pub(crate) fn hadamard_bound<R, I>(rows: R) -> f64
where
    R: Iterator<Item = I>,
    I: Iterator<Item = f64>,
{
    rows.map(|r| r.map(|x| x * x).sum::<f64>().sqrt()).product()
}

// ---------------------------------------------------------------------------
// rational

impl Determinant for BigRational {
    fn determinant(m: &Matrix<BigRational>) -> BigRational {
        let form = IntegerForm::new(m);
        let all: Vec<usize> = (0..m.n()).collect();
        form.minor(&all)
    }

    fn minor_source(m: &Matrix<BigRational>) -> Box<dyn MinorSource<BigRational> + '_> {
        Box::new(IntegerForm::new(m))
    }
}

/// Row-scaled integer copy of a rational matrix: row `i` is multiplied by the
/// lcm of its denominators, so a principal minor over `S` equals the integer
/// minor divided by the product of those row scales over `S`.
struct IntegerForm {
    n: usize,
    ints: Vec<BigInt>,
    small: Option<Vec<i128>>,
    row_scale: Vec<BigInt>,
}

impl IntegerForm {
    fn new(m: &Matrix<BigRational>) -> Self {
        let n = m.n();
        let mut ints = Vec::with_capacity(n * n);
        let mut row_scale = Vec::with_capacity(n);
        for row in m.rows() {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            for x in row {
                ints.push(x.numer() * (&l / x.denom()));
            }
            row_scale.push(l);
        }
        let small = ints.iter().map(|x| x.to_i128()).collect::<Option<Vec<_>>>();
        IntegerForm { n, ints, small, row_scale }
    }
}

impl MinorSource<BigRational> for IntegerForm {
    fn minor(&self, idx: &[usize]) -> BigRational {
        let n = self.n;
        let int_det = self
            .small
            .as_ref()
            .and_then(|small| {
                let mut a: Vec<i128> = Vec::with_capacity(idx.len() * idx.len());
                for &i in idx {
                    for &j in idx {
                        a.push(small[i * n + j]);
                    }
                }
                bareiss_i128(&mut a, idx.len()).map(BigInt::from)
            })
            .unwrap_or_else(|| {
                let mut a: Vec<BigInt> = Vec::with_capacity(idx.len() * idx.len());
                for &i in idx {
                    for &j in idx {
                        a.push(self.ints[i * n + j].clone());
                    }
                }
                bareiss_bigint(&mut a, idx.len())
            });
        let den = idx.iter().fold(BigInt::one(), |acc, &i| acc * &self.row_scale[i]);
        BigRational::new(int_det, den)
    }

    fn scale(&self, _idx: &[usize]) -> f64 {
        1.0
    }
}

/// Fraction-free elimination on checked `i128`; `None` on overflow.
fn bareiss_i128(a: &mut [i128], n: usize) -> Option<i128> {
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k * n + k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                return Some(0);
            };
            for j in 0..n {
                a.swap(k * n + j, r * n + j);
            }
            sign = -sign;
        }
        let pivot = a[k * n + k];
        for i in k + 1..n {
            let lead = a[i * n + k];
            for j in k + 1..n {
                let num = a[i * n + j]
                    .checked_mul(pivot)?
                    .checked_sub(lead.checked_mul(a[k * n + j])?)?;
                a[i * n + j] = num / prev;
            }
        }
        prev = pivot;
    }
    Some(sign * a[n * n - 1])
}

fn bareiss_bigint(a: &mut [BigInt], n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                Some(r) => {
                    for j in 0..n {
                        a.swap(k * n + j, r * n + j);
                    }
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let lead = a[i * n + k].clone();
            for j in k + 1..n {
                let num = &a[i * n + j] * &pivot - &lead * &a[k * n + j];
                a[i * n + j] = num / &prev;
            }
        }
        prev = pivot;
    }
    let d = a[n * n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Sign of a determinant via the exact path, as `-1`, `0` or `1`.
pub fn exact_sign(m: &Matrix<BigRational>) -> i32 {
    let d = m.determinant();
    if d.is_zero() {
        0
    } else if d.is_positive() {
        1
    } else {
        -1
    }
}
