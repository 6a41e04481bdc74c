//! Slope bookkeeping for the four tubular weight types.
//!
//! The suspension of the stable category acts on slopes through a bijection
//! `alpha: Q -> Q`. Its inverse is affine for `(2,3,6)` and `(2,4,4)` and
//! piecewise fractional linear for `(3,3,3)` and `(2,2,2,2)`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::picard::{LElt, WeightTriple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TubularType {
    #[serde(rename = "2,3,6")]
    T236,
    #[serde(rename = "2,4,4")]
    T244,
    #[serde(rename = "3,3,3")]
    T333,
    #[serde(rename = "2,2,2,2")]
    T2222,
}

impl TubularType {
    pub fn all() -> [TubularType; 4] {
        [TubularType::T236, TubularType::T244, TubularType::T333, TubularType::T2222]
    }

    pub fn weights(&self) -> &'static [i64] {
        match self {
            TubularType::T236 => &[2, 3, 6],
            TubularType::T244 => &[2, 4, 4],
            TubularType::T333 => &[3, 3, 3],
            TubularType::T2222 => &[2, 2, 2, 2],
        }
    }

    /// The triple for the three-weight types.
    pub fn triple(&self) -> Option<WeightTriple> {
        match self.weights() {
            &[a, b, c] => WeightTriple::new(a, b, c).ok(),
            _ => None,
        }
    }

    /// Recognises a triple of Euler characteristic zero, in any order.
    pub fn from_triple(w: WeightTriple) -> Option<TubularType> {
        match w.sorted().weights() {
            [2, 3, 6] => Some(TubularType::T236),
            [2, 4, 4] => Some(TubularType::T244),
            [3, 3, 3] => Some(TubularType::T333),
            _ => None,
        }
    }

    /// Least common multiple of the weights.
    pub fn pbar(&self) -> i64 {
        self.weights().iter().fold(1, |acc, p| acc.lcm(p))
    }

    /// Number of degree-zero line bundles: `prod p_i / pbar`.
    pub fn degree_zero_count(&self) -> i64 {
        self.weights().iter().product::<i64>() / self.pbar()
    }

    /// Number of tau-orbits in the degree-zero line bundles; each has
    /// length `pbar`.
    pub fn tau_orbits(&self) -> i64 {
        self.degree_zero_count() / self.pbar()
    }

    /// `alpha^{-1}(0)`.
    pub fn alpha_inv_at_zero(&self) -> Rational64 {
        self.alpha_inv(Rational64::zero())
    }

    /// Slope of `E[-1]` for `E` of slope `q`.
    pub fn alpha_inv(&self, q: Rational64) -> Rational64 {
        let r = |a, b| Rational64::new(a, b);
        let n = q.floor();
        let f = q - n;
        match self {
            TubularType::T236 => q - 3,
            TubularType::T244 => q - 2,
            TubularType::T333 => {
                let g = if f <= r(1, 2) {
                    (f * 5 - 3) / (r(2, 1) - f * 3)
                } else {
                    f / (Rational64::one() - f * 3)
                };
                n + g
            }
            TubularType::T2222 => {
                let g = if f <= r(1, 3) {
                    (f * 11 - 4) / (r(3, 1) - f * 8)
                } else {
                    f / (Rational64::one() - f * 4)
                };
                n + g
            }
        }
    }

    /// Slope of `E[1]` for `E` of slope `q`.
    pub fn alpha(&self, q: Rational64) -> Rational64 {
        let one = Rational64::one();
        match self {
            TubularType::T236 => q + 3,
            TubularType::T244 => q + 2,
            TubularType::T333 => {
                // Values of the branches on [n, n+1) fill [n - 3/2, n - 1/2).
                let n = (q + Rational64::new(3, 2)).floor();
                let y = q - n;
                let f = if y <= -one {
                    (y * 2 + 3) / (y * 3 + 5)
                } else {
                    y / (y * 3 + 1)
                };
                n + f
            }
            TubularType::T2222 => {
                let n = (q + Rational64::new(4, 3)).floor();
                let y = q - n;
                let f = if y <= -one {
                    (y * 3 + 4) / (y * 8 + 11)
                } else {
                    y / (y * 4 + 1)
                };
                n + f
            }
        }
    }

    /// Summands of the projective cover of a homogeneous quasi-simple of
    /// slope 0, one per member.
    pub fn zero_slope_cover(&self) -> ZeroSlopeCover {
        let pbar = self.pbar();
        let mut summands = Vec::new();
        match self.triple() {
            Some(w) => {
                let (axes, multiples): (Vec<usize>, Vec<i64>) = match self {
                    TubularType::T236 => (vec![2], vec![1, 2]),
                    TubularType::T244 => (vec![1, 2], vec![1]),
                    _ => (vec![0, 1, 2], vec![1]),
                };
                for &i in &axes {
                    for &k in &multiples {
                        for j in 0..pbar {
                            let z = w.omega() * j - w.x(i) * k;
                            summands.push(CoverSummand {
                                label: format!("O({z})"),
                                degree: z.delta(),
                            });
                        }
                    }
                }
            }
            None => {
                for i in 1..=4 {
                    for j in 0..pbar {
                        summands.push(CoverSummand {
                            label: format!("O(-x{i}+{j}*w)"),
                            degree: -1,
                        });
                    }
                }
            }
        }
        let cover_rank = summands.len() as i64;
        let cover_degree: i64 = summands.iter().map(|s| s.degree).sum();
        let s_rank = pbar;
        let kernel_rank = cover_rank - s_rank;
        ZeroSlopeCover {
            summands,
            s_rank,
            kernel_rank,
            kernel_slope: Rational64::new(cover_degree, kernel_rank),
        }
    }
}

impl fmt::Display for TubularType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.weights().iter().map(|p| p.to_string()).collect();
        write!(f, "({})", w.join(","))
    }
}

impl FromStr for TubularType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits: String = s.chars().filter(|c| c.is_ascii_digit()).collect();
        match digits.as_str() {
            "236" => Ok(TubularType::T236),
            "244" => Ok(TubularType::T244),
            "333" => Ok(TubularType::T333),
            "2222" => Ok(TubularType::T2222),
            _ => Err(Error::parse(s, "expected one of 236, 244, 333, 2222")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverSummand {
    pub label: String,
    pub degree: i64,
}

/// Projective cover `0 -> S[-1] -> P -> S -> 0` of a slope-0 quasi-simple `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroSlopeCover {
    pub summands: Vec<CoverSummand>,
    pub s_rank: i64,
    pub kernel_rank: i64,
    #[serde(serialize_with = "ser_rational")]
    pub kernel_slope: Rational64,
}

fn ser_rational<S: serde::Serializer>(q: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// A line bundle in the projective cover for weights `(2,3,6)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverTerm {
    pub twist: LElt,
    pub multiplicity: i64,
}

/// Projective cover of a homogeneous quasi-simple `S_q`, `q = d/r`, for
/// weights `(2,3,6)`, with its rank and degree bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cover236 {
    pub terms: Vec<CoverTerm>,
    pub s_rank: i64,
    pub s_degree: i64,
    pub kernel_rank: i64,
    pub kernel_degree: i64,
    #[serde(serialize_with = "ser_rational")]
    pub kernel_slope: Rational64,
}

impl Cover236 {
    pub fn summand_count(&self) -> i64 {
        self.terms.iter().map(|t| t.multiplicity).sum()
    }
}

/// Summands `L^d + L(-x3)^r + L(-2x3)^(r-d)` over the six degree-zero line
/// bundles `L = O(j*omega)`.
pub fn cover_structure_236(d: i64, r: i64) -> Result<Cover236> {
    if r <= 0 || d < 0 || d >= r {
        return Err(Error::Precondition(format!("need 0 <= d < r, got d={d}, r={r}")));
    }
    if d.gcd(&r) != 1 {
        return Err(Error::Precondition(format!("{d}/{r} is not in lowest terms")));
    }
    let w = WeightTriple::new(2, 3, 6)?;
    let mut terms = Vec::new();
    for j in 0..6 {
        let l = w.omega() * j;
        for (k, mult) in [(0, d), (1, r), (2, r - d)] {
            if mult > 0 {
                terms.push(CoverTerm {
                    twist: l - w.x(2) * k,
                    multiplicity: mult,
                });
            }
        }
    }
    let cover_rank: i64 = terms.iter().map(|t| t.multiplicity).sum();
    let cover_degree: i64 = terms.iter().map(|t| t.multiplicity * t.twist.delta()).sum();
    let (s_rank, s_degree) = (6 * r, 6 * d);
    let kernel_rank = cover_rank - s_rank;
    let kernel_degree = cover_degree - s_degree;
    Ok(Cover236 {
        terms,
        s_rank,
        s_degree,
        kernel_rank,
        kernel_degree,
        kernel_slope: Rational64::new(kernel_degree, kernel_rank),
    })
}

/// Parses `d/r` or an integer.
pub fn parse_rational(s: &str) -> Result<Rational64> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i64 = n.parse().map_err(|_| Error::parse(s, "bad numerator"))?;
    let d: i64 = d.parse().map_err(|_| Error::parse(s, "bad denominator"))?;
    if d == 0 {
        return Err(Error::parse(s, "zero denominator"));
    }
    Ok(Rational64::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    #[test]
    fn values_at_zero() {
        let expect = [q(-3, 1), q(-2, 1), q(-3, 2), q(-4, 3)];
        for (t, e) in TubularType::all().into_iter().zip(expect) {
            assert_eq!(t.alpha_inv_at_zero(), e, "{t}");
        }
        assert_eq!(TubularType::T236.alpha(q(0, 1)), q(3, 1));
        assert_eq!(TubularType::T244.alpha(q(-2, 1)), q(0, 1));
        for n in -5..5 {
            assert_eq!(TubularType::T236.alpha(q(n, 1)), q(n + 3, 1));
        }
    }

    #[test]
    fn breakpoints_agree() {
        assert_eq!(TubularType::T333.alpha_inv(q(1, 2)), q(-1, 1));
        assert_eq!((q(5, 2) - 3) / (q(2, 1) - q(3, 2)), q(-1, 1));
        assert_eq!(q(1, 2) / (q(1, 1) - q(3, 2)), q(-1, 1));
        assert_eq!(TubularType::T2222.alpha_inv(q(1, 3)), q(-1, 1));
        for t in TubularType::all() {
            for n in -3..3 {
                let below = t.alpha_inv(q(n, 1) - q(1, 1_000_000));
                let at = t.alpha_inv(q(n, 1));
                assert!(at > below && at - below < q(1, 1000), "{t} {n}");
            }
        }
    }

    #[test]
    fn double_inverse_is_shift_by_pbar_multiple() {
        assert_eq!(TubularType::T2222.alpha_inv(TubularType::T2222.alpha_inv(q(0, 1))), q(-12, 5));
        assert_eq!(TubularType::T236.alpha_inv(TubularType::T236.alpha_inv(q(1, 2))), q(-11, 2));
    }

    #[test]
    fn constants() {
        let counts: Vec<i64> = TubularType::all().iter().map(|t| t.degree_zero_count()).collect();
        assert_eq!(counts, vec![6, 8, 9, 8]);
        let orbits: Vec<i64> = TubularType::all().iter().map(|t| t.tau_orbits()).collect();
        assert_eq!(orbits, vec![1, 2, 3, 4]);
        for t in TubularType::all().into_iter().take(3) {
            let w = t.triple().unwrap();
            assert_eq!(w.euler_characteristic(), 0.into());
            assert_eq!(w.pbar(), t.pbar());
            assert_eq!(TubularType::from_triple(w), Some(t));
            let zeros = (0..w.p(0))
                .flat_map(|a| (0..w.p(1)).flat_map(move |b| (0..w.p(2)).map(move |c| (a, b, c))))
                .flat_map(|(a, b, c)| (-3..=3).map(move |m| LElt::normalize(w, [a, b, c], m)))
                .filter(|z| z.delta() == 0)
                .count() as i64;
            assert_eq!(zeros, t.degree_zero_count());
        }
        assert_eq!("333".parse::<TubularType>().unwrap(), TubularType::T333);
        assert_eq!("(2,2,2,2)".parse::<TubularType>().unwrap(), TubularType::T2222);
        assert!("237".parse::<TubularType>().is_err());
    }

    #[test]
    fn zero_slope_covers() {
        let s_ranks: Vec<i64> = TubularType::all().iter().map(|t| t.zero_slope_cover().s_rank).collect();
        let k_ranks: Vec<i64> = TubularType::all().iter().map(|t| t.zero_slope_cover().kernel_rank).collect();
        let order = [TubularType::T2222, TubularType::T333, TubularType::T244, TubularType::T236];
        let s_by_order: Vec<i64> = order.iter().map(|t| t.zero_slope_cover().s_rank).collect();
        let k_by_order: Vec<i64> = order.iter().map(|t| t.zero_slope_cover().kernel_rank).collect();
        assert_eq!(s_by_order, vec![2, 3, 4, 6]);
        assert_eq!(k_by_order, vec![6, 6, 4, 6]);
        assert_eq!(s_ranks.len(), k_ranks.len());
        for t in TubularType::all() {
            let c = t.zero_slope_cover();
            assert_eq!(c.kernel_slope, t.alpha_inv_at_zero(), "{t}");
        }
        let c = TubularType::T236.zero_slope_cover();
        assert_eq!(c.summands.len(), 12);
        let mut degrees: Vec<i64> = c.summands.iter().map(|s| s.degree).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, [vec![-2; 6], vec![-1; 6]].concat());
    }

    #[test]
    fn cover_236_examples() {
        let c = cover_structure_236(0, 1).unwrap();
        assert_eq!(c.summand_count(), 12);
        assert_eq!(c.kernel_rank, 6);
        assert_eq!(c.kernel_slope, q(-3, 1));
        let c = cover_structure_236(1, 2).unwrap();
        assert_eq!(c.kernel_slope, q(-5, 2));
        assert!(cover_structure_236(2, 4).is_err());
        assert!(cover_structure_236(3, 2).is_err());
        assert!(cover_structure_236(0, 0).is_err());
    }

    #[test]
    fn cover_236_bookkeeping() {
        for r in 1..=12 {
            for d in 0..r {
                if d.gcd(&r) != 1 {
                    continue;
                }
                let c = cover_structure_236(d, r).unwrap();
                assert_eq!(c.summand_count(), 6 * (d + r + (r - d)));
                assert_eq!(c.kernel_rank, 6 * r);
                assert_eq!(c.kernel_slope, TubularType::T236.alpha_inv(q(d, r)));
            }
        }
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-2").unwrap(), q(-2, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    fn any_type() -> impl Strategy<Value = TubularType> {
        prop_oneof![
            Just(TubularType::T236),
            Just(TubularType::T244),
            Just(TubularType::T333),
            Just(TubularType::T2222)
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn round_trip(t in any_type(), n in -500i64..500, d in 1i64..60) {
            let x = q(n, d);
            prop_assert_eq!(t.alpha(t.alpha_inv(x)), x);
            prop_assert_eq!(t.alpha_inv(t.alpha(x)), x);
            prop_assert!(t.alpha_inv(x) < x);
        }

        #[test]
        fn monotone(t in any_type(), n in -500i64..500, d in 1i64..60, e in 1i64..500) {
            let x = q(n, d);
            let y = x + q(e, 97);
            prop_assert!(t.alpha_inv(x) < t.alpha_inv(y));
            prop_assert!(t.alpha(x) < t.alpha(y));
        }
    }
}
