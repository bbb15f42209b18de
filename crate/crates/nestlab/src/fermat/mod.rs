//! Exact arithmetic and order on the ring of Fermat reals.
//!
//! A Fermat real is an equivalence class of little-oh polynomials
//! `r + sum c_i * t^(e_i) + o(t)` as `t -> 0+`, two representatives being
//! identified when they differ by `o(t)`. The canonical form keeps the
//! standard part `r` and the terms with exponent in `(0, 1]`, each with a
//! nonzero coefficient and the exponents strictly ascending; every term with
//! exponent above 1 is `o(t)` and is dropped. Exponents are restricted to
//! rationals so that everything stays exactly decidable; coefficients are
//! exact rationals throughout and no floating point enters the order path.
//!
//! The order is decided by the leading term: for distinct canonical `x`, `y`
//! the difference `x - y` has a smallest exponent at most 1 (the standard
//! part counting as exponent 0), and such a term dominates every admissible
//! `o(t)` slack near zero, so the sign of its coefficient is the sign of
//! `x - y` on small `t`. The sampling oracle [`FermatReal::sample_at`]
//! evaluates representatives exactly at rational points chosen so that all
//! fractional powers are exact, and the suites replay every comparison
//! against it.

mod parse;

pub use parse::parse_fermat;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::relation::Relation;
use crate::space::FiniteSpace;

pub type Rational = BigRational;

/// Convenience constructor for exact rationals.
pub fn rational(numer: i64, denom: i64) -> Rational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// One raw term `coefficient * t^exponent` of a little-oh polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTerm {
    pub coefficient: Rational,
    pub exponent: Rational,
}

/// A raw little-oh polynomial representative: any finite list of terms,
/// duplicates and zero coefficients allowed. Exponent 0 terms are the
/// standard part.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawLittleOh {
    pub terms: Vec<RawTerm>,
}

impl RawLittleOh {
    pub fn new(terms: Vec<RawTerm>) -> Self {
        RawLittleOh { terms }
    }

    pub fn from_pairs(pairs: &[(Rational, Rational)]) -> Self {
        RawLittleOh {
            terms: pairs
                .iter()
                .map(|(c, e)| RawTerm {
                    coefficient: c.clone(),
                    exponent: e.clone(),
                })
                .collect(),
        }
    }

    /// Representative product, term by term; exponents add.
    pub fn mul(&self, other: &RawLittleOh) -> RawLittleOh {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(RawTerm {
                    coefficient: &a.coefficient * &b.coefficient,
                    exponent: &a.exponent + &b.exponent,
                });
            }
        }
        RawLittleOh { terms }
    }
}

/// One canonical infinitesimal term: exponent in `(0, 1]`, coefficient
/// nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FermatTerm {
    pub exponent: Rational,
    pub coefficient: Rational,
}

/// A Fermat real in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct FermatReal {
    standard_part: Rational,
    terms: Vec<FermatTerm>,
}

/// Canonicalizes a raw representative.
///
/// Exponent 0 terms fold into the standard part, terms with exponent above 1
/// are `o(t)` and vanish, equal exponents merge, zero coefficients drop, and
/// the remaining terms sort by ascending exponent. Negative exponents are an
/// input error.
pub fn canonicalize(raw: &RawLittleOh) -> Result<FermatReal> {
    let mut standard_part = Rational::zero();
    let mut terms: Vec<FermatTerm> = Vec::new();
    for t in &raw.terms {
        if t.exponent.is_negative() {
            return Err(Error::input(format!(
                "negative exponent {} in little-oh polynomial",
                t.exponent
            )));
        }
        if t.exponent.is_zero() {
            standard_part += &t.coefficient;
            continue;
        }
        if t.exponent > Rational::one() {
            continue;
        }
        match terms.iter_mut().find(|u| u.exponent == t.exponent) {
            Some(u) => u.coefficient += &t.coefficient,
            None => terms.push(FermatTerm {
                exponent: t.exponent.clone(),
                coefficient: t.coefficient.clone(),
            }),
        }
    }
    terms.retain(|u| !u.coefficient.is_zero());
    terms.sort_by(|a, b| a.exponent.cmp(&b.exponent));
    Ok(FermatReal {
        standard_part,
        terms,
    })
}

impl FermatReal {
    pub fn zero() -> Self {
        FermatReal {
            standard_part: Rational::zero(),
            terms: Vec::new(),
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        FermatReal {
            standard_part: r,
            terms: Vec::new(),
        }
    }

    /// The infinitesimal `t`.
    pub fn t() -> Self {
        FermatReal {
            standard_part: Rational::zero(),
            terms: vec![FermatTerm {
                exponent: Rational::one(),
                coefficient: Rational::one(),
            }],
        }
    }

    /// The infinitesimal `t^e` for a rational exponent `e >= 0`.
    pub fn t_pow(exponent: Rational) -> Result<Self> {
        canonicalize(&RawLittleOh::from_pairs(&[(Rational::one(), exponent)]))
    }

    pub fn standard_part(&self) -> &Rational {
        &self.standard_part
    }

    pub fn terms(&self) -> &[FermatTerm] {
        &self.terms
    }

    /// True iff this is the class of all `o(t)` functions.
    pub fn is_zero(&self) -> bool {
        self.standard_part.is_zero() && self.terms.is_empty()
    }

    pub fn add(&self, other: &FermatReal) -> FermatReal {
        let mut raw = self.to_raw();
        raw.terms.extend(other.to_raw().terms);
        canonicalize(&raw).expect("canonical inputs have no negative exponents")
    }

    pub fn negate(&self) -> FermatReal {
        FermatReal {
            standard_part: -self.standard_part.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| FermatTerm {
                    exponent: t.exponent.clone(),
                    coefficient: -t.coefficient.clone(),
                })
                .collect(),
        }
    }

    pub fn sub(&self, other: &FermatReal) -> FermatReal {
        self.add(&other.negate())
    }

    /// Product: representatives multiply term by term (exponents add) and
    /// the result canonicalizes. Well defined on classes because any `o(t)`
    /// junk in a representative only produces exponents above 1.
    pub fn mul(&self, other: &FermatReal) -> FermatReal {
        canonicalize(&self.to_raw().mul(&other.to_raw()))
            .expect("canonical inputs have no negative exponents")
    }

    /// The canonical representative as a raw polynomial.
    pub fn to_raw(&self) -> RawLittleOh {
        let mut terms = Vec::with_capacity(self.terms.len() + 1);
        if !self.standard_part.is_zero() {
            terms.push(RawTerm {
                coefficient: self.standard_part.clone(),
                exponent: Rational::zero(),
            });
        }
        for t in &self.terms {
            terms.push(RawTerm {
                coefficient: t.coefficient.clone(),
                exponent: t.exponent.clone(),
            });
        }
        RawLittleOh { terms }
    }

    /// Sign of the number near zero: the sign of the smallest-exponent
    /// coefficient, the standard part counting as exponent 0.
    fn leading_sign(&self) -> Ordering {
        if !self.standard_part.is_zero() {
            return self.standard_part.cmp(&Rational::zero());
        }
        match self.terms.first() {
            Some(t) => t.coefficient.cmp(&Rational::zero()),
            None => Ordering::Equal,
        }
    }

    /// Total order on Fermat reals: the sign of the difference near zero.
    ///
    /// This decides the order with `o(t)` slack because a canonical nonzero
    /// difference carries a term of exponent at most 1, which no `o(t)`
    /// function can overcome as `t -> 0+`.
    pub fn compare(&self, other: &FermatReal) -> Ordering {
        self.sub(other).leading_sign()
    }

    /// True iff the standard part is `r`, i.e. the number sits in the monad
    /// of `r`.
    pub fn in_monad(&self, r: &Rational) -> bool {
        self.standard_part == *r
    }

    /// Least common multiple of the exponent denominators; sampling points
    /// must be perfect powers of this degree.
    pub fn exponent_lcm(&self) -> BigInt {
        let mut d = BigInt::one();
        for t in &self.terms {
            d = d.lcm(t.exponent.denom());
        }
        d
    }

    /// Exact value of the canonical representative at `t`.
    ///
    /// Requires `t` in `(0, 1)` and `t = s^D` for rational `s`, where `D` is
    /// the lcm of the exponent denominators; otherwise some fractional power
    /// would leave the rationals. Violations report the required `D`.
    pub fn sample_at(&self, t: &Rational) -> Result<Rational> {
        if !t.is_positive() || *t >= Rational::one() {
            return Err(Error::input(format!("sample point {t} not in (0, 1)")));
        }
        let d = self.exponent_lcm();
        let s = rational_root(t, &d).ok_or_else(|| {
            Error::input(format!(
                "sample point {t} is not an exact {d}-th power; choose t = s^{d}"
            ))
        })?;
        let mut value = self.standard_part.clone();
        for term in &self.terms {
            // exponent e = p/q with q | D, so e*D is a nonnegative integer.
            let scaled = (term.exponent.numer() * &d) / term.exponent.denom();
            let k: u32 = (&scaled)
                .try_into()
                .map_err(|_| Error::input("scaled exponent too large to evaluate".to_string()))?;
            value += &term.coefficient * power(&s, k);
        }
        Ok(value)
    }
}

fn power(base: &Rational, k: u32) -> Rational {
    Rational::new(base.numer().pow(k), base.denom().pow(k))
}

/// Exact `d`-th root of a positive rational, if both sides are perfect
/// `d`-th powers.
fn rational_root(t: &Rational, d: &BigInt) -> Option<Rational> {
    let exp: u32 = d.try_into().ok()?;
    if exp == 1 {
        return Some(t.clone());
    }
    let num_root = t.numer().nth_root(exp);
    let den_root = t.denom().nth_root(exp);
    if num_root.pow(exp) == *t.numer() && den_root.pow(exp) == *t.denom() {
        Some(Rational::new(num_root, den_root))
    } else {
        None
    }
}

impl PartialOrd for FermatReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.compare(other))
    }
}

impl Ord for FermatReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Debug for FermatReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The strict linear order on distinct Fermat reals.
///
/// The case analysis defining it collapses on canonical forms: whenever the
/// two numbers differ, the down set at the smaller one already witnesses the
/// first case, so the order coincides with the strict comparison. Equal
/// inputs are rejected because the order is only defined on distinct points.
pub fn lt_f(x: &FermatReal, y: &FermatReal) -> Result<bool> {
    if x == y {
        return Err(Error::input(
            "the linear order is defined on distinct Fermat reals",
        ));
    }
    Ok(x.compare(y) == Ordering::Less)
}

/// The linear order a finite sample of pairwise distinct Fermat reals
/// induces on its index set, as a relation ready for the nest machinery.
pub fn sample_order(points: &[FermatReal]) -> Result<Relation> {
    if points.is_empty() {
        return Err(Error::input("sample order needs at least one point"));
    }
    for (i, x) in points.iter().enumerate() {
        for (j, y) in points.iter().enumerate().skip(i + 1) {
            if x == y {
                return Err(Error::input(format!(
                    "duplicate sample points at indices {i} and {j}: {x}"
                )));
            }
        }
    }
    let space = FiniteSpace::new(points.len())?;
    let mut r = Relation::empty(space);
    for (i, x) in points.iter().enumerate() {
        for (j, y) in points.iter().enumerate() {
            if i != j && x.compare(y) == Ordering::Less {
                r.set(i, j, true);
            }
        }
    }
    debug_assert!(r.is_linear());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn canon(pairs: &[(i64, i64, i64, i64)]) -> FermatReal {
        // (coefficient numer, denom, exponent numer, denom)
        let raw = RawLittleOh::from_pairs(
            &pairs
                .iter()
                .map(|&(cn, cd, en, ed)| (rational(cn, cd), rational(en, ed)))
                .collect::<Vec<_>>(),
        );
        canonicalize(&raw).unwrap()
    }

    #[test]
    fn canonicalization_examples() {
        // 3 + 2t^2: the square term is o(t).
        let x = canon(&[(3, 1, 0, 1), (2, 1, 2, 1)]);
        assert_eq!(x.standard_part(), &rational(3, 1));
        assert!(x.terms().is_empty());

        // t + t - 2t cancels to zero.
        let z = canon(&[(1, 1, 1, 1), (1, 1, 1, 1), (-2, 1, 1, 1)]);
        assert!(z.is_zero());

        // 1 + t^(1/2) + t^(3/2): the last exponent exceeds 1.
        let y = canon(&[(1, 1, 0, 1), (1, 1, 1, 2), (1, 1, 3, 2)]);
        assert_eq!(y.terms().len(), 1);
        assert_eq!(y.terms()[0].exponent, rational(1, 2));

        let neg = RawLittleOh::from_pairs(&[(rational(1, 1), rational(-1, 2))]);
        assert!(canonicalize(&neg).is_err());
    }

    #[test]
    fn is_zero_examples() {
        assert!(canon(&[(1, 1, 2, 1)]).is_zero());
        assert!(!canon(&[(1, 1, 1, 1)]).is_zero());
        assert!(FermatReal::zero().is_zero());
    }

    #[test]
    fn arithmetic_examples() {
        let half = FermatReal::t_pow(rational(1, 2)).unwrap();
        assert!(half.add(&half.negate()).is_zero());

        // sqrt(t) * sqrt(t) = t, kept at the exponent boundary.
        let t = half.mul(&half);
        assert_eq!(t, FermatReal::t());

        // t^(1/2) * t^(2/3) has exponent 7/6 and vanishes.
        let twothirds = FermatReal::t_pow(rational(2, 3)).unwrap();
        assert!(half.mul(&twothirds).is_zero());
    }

    #[test]
    fn comparison_examples() {
        let two_t = canon(&[(2, 1, 1, 1)]);
        let three_t = canon(&[(3, 1, 1, 1)]);
        assert_eq!(two_t.compare(&three_t), Ordering::Less);

        // sqrt(t) dominates t near zero.
        let t = FermatReal::t();
        let sqrt_t = FermatReal::t_pow(rational(1, 2)).unwrap();
        assert_eq!(t.compare(&sqrt_t), Ordering::Less);

        assert_eq!(t.compare(&t), Ordering::Equal);
    }

    #[test]
    fn lt_f_examples() {
        let zero = FermatReal::zero();
        let t = FermatReal::t();
        assert!(lt_f(&zero, &t).unwrap());
        assert!(!lt_f(&t, &zero).unwrap());
        let one = FermatReal::from_rational(rational(1, 1));
        let one_plus = one.add(&FermatReal::t_pow(rational(1, 3)).unwrap());
        assert!(lt_f(&one, &one_plus).unwrap());
        assert!(lt_f(&t, &t).is_err());
    }

    #[test]
    fn monad_examples() {
        let x = FermatReal::from_rational(rational(3, 1))
            .add(&FermatReal::t_pow(rational(1, 2)).unwrap());
        assert!(x.in_monad(&rational(3, 1)));
        assert!(FermatReal::t().in_monad(&rational(0, 1)));
        let y = FermatReal::from_rational(rational(1, 1)).add(&FermatReal::t());
        assert!(!y.in_monad(&rational(0, 1)));
    }

    #[test]
    fn sampling_examples() {
        let sqrt_t = FermatReal::t_pow(rational(1, 2)).unwrap();
        assert_eq!(sqrt_t.sample_at(&rational(1, 4)).unwrap(), rational(1, 2));

        let x = FermatReal::from_rational(rational(1, 1)).add(&canon(&[(2, 1, 1, 1)]));
        assert_eq!(x.sample_at(&rational(1, 8)).unwrap(), rational(5, 4));

        // t^(1/2) - t^(1/3) at t = (1/2)^6: 1/8 - 1/4.
        let diff = sqrt_t.sub(&FermatReal::t_pow(rational(1, 3)).unwrap());
        assert_eq!(diff.exponent_lcm(), BigInt::from(6));
        assert_eq!(diff.sample_at(&rational(1, 64)).unwrap(), rational(-1, 8));

        // 1/3 is not an exact square, so sqrt(t) cannot be evaluated there.
        assert!(sqrt_t.sample_at(&rational(1, 3)).is_err());
        assert!(sqrt_t.sample_at(&rational(3, 2)).is_err());
    }

    #[test]
    fn mul_ignores_junk_terms() {
        let x_clean = RawLittleOh::from_pairs(&[(rational(1, 1), rational(1, 2))]);
        let mut x_junk = x_clean.clone();
        x_junk.terms.push(RawTerm {
            coefficient: rational(7, 1),
            exponent: rational(3, 2),
        });
        let y = RawLittleOh::from_pairs(&[(rational(2, 1), rational(0, 1))]);
        let clean = canonicalize(&x_clean.mul(&y)).unwrap();
        let junked = canonicalize(&x_junk.mul(&y)).unwrap();
        assert_eq!(clean, junked);
    }

    #[test]
    fn sample_order_examples() {
        let t = FermatReal::t();
        let zero = FermatReal::zero();
        let sqrt_t = FermatReal::t_pow(rational(1, 2)).unwrap();
        let r = sample_order(&[t.clone(), zero.clone(), sqrt_t]).unwrap();
        // zero < t < sqrt(t), i.e. index 1 < index 0 < index 2.
        assert_eq!(r.pairs(), vec![(0, 2), (1, 0), (1, 2)]);

        let standard = sample_order(&[
            FermatReal::from_rational(rational(0, 1)),
            FermatReal::from_rational(rational(1, 1)),
            FermatReal::from_rational(rational(2, 1)),
        ])
        .unwrap();
        assert_eq!(standard.pairs(), vec![(0, 1), (0, 2), (1, 2)]);

        assert!(sample_order(&[t.clone(), t]).is_err());
    }
}
