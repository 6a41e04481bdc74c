//! The rank-one abelian group `L(p1,p2,p3)` of a weighted projective line.
//!
//! `L` is generated by `x1, x2, x3` subject to `p1*x1 = p2*x2 = p3*x3 = c`.
//! Every element has a unique normal form `l1*x1 + l2*x2 + l3*x3 + m*c`
//! with `0 <= li < pi`, which is what [`LElt`] stores.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Rational64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// The weights `(p1, p2, p3)`, kept in the order given.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "[i64; 3]")]
pub struct WeightTriple([i64; 3]);

impl From<WeightTriple> for [i64; 3] {
    fn from(w: WeightTriple) -> Self {
        w.0
    }
}

impl fmt::Display for WeightTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

impl WeightTriple {
    pub fn new(p1: i64, p2: i64, p3: i64) -> Result<Self> {
        for p in [p1, p2, p3] {
            if p < 2 {
                return Err(Error::InvalidWeight(p));
            }
        }
        Ok(WeightTriple([p1, p2, p3]))
    }

    pub fn weights(&self) -> [i64; 3] {
        self.0
    }

    /// Weight of generator `i` (0-based).
    pub fn p(&self, i: usize) -> i64 {
        self.0[i]
    }

    /// `lcm(p1, p2, p3)`.
    pub fn pbar(&self) -> i64 {
        self.0[0].lcm(&self.0[1]).lcm(&self.0[2])
    }

    pub fn sorted(&self) -> WeightTriple {
        let mut w = self.0;
        w.sort_unstable();
        WeightTriple(w)
    }

    /// `2 - sum (1 - 1/pi)`.
    pub fn euler_characteristic(&self) -> Rational64 {
        let mut chi = Rational64::from_integer(2);
        for p in self.0 {
            chi -= Rational64::new(p - 1, p);
        }
        chi
    }

    /// `(p1+p2+p3-1) - (p1-1)(p2-1)(p3-1)`.
    pub fn gorenstein_number(&self) -> i64 {
        self.coh_rank() - self.stab_rank()
    }

    /// Rank of the Grothendieck group of coherent sheaves.
    pub fn coh_rank(&self) -> i64 {
        self.0.iter().sum::<i64>() - 1
    }

    /// Rank of the Grothendieck group of the stable category; equals the
    /// number of points of the fundamental cuboid.
    pub fn stab_rank(&self) -> i64 {
        self.0.iter().map(|p| p - 1).product()
    }

    /// True for weights of shape `(2,2,n)` in any order.
    pub fn is_two_two_n(&self) -> bool {
        self.0.iter().filter(|&&p| p == 2).count() >= 2
    }

    /// Generator indices of weight 2.
    pub fn weight_two_generators(&self) -> Vec<usize> {
        (0..3).filter(|&i| self.0[i] == 2).collect()
    }

    pub fn zero(&self) -> LElt {
        LElt {
            w: *self,
            l: [0; 3],
            m: 0,
        }
    }

    pub fn x(&self, i: usize) -> LElt {
        let mut n = [0; 3];
        n[i] = 1;
        LElt::normalize(*self, n, 0)
    }

    pub fn c(&self) -> LElt {
        LElt {
            w: *self,
            l: [0; 3],
            m: 1,
        }
    }

    /// The dualizing element `c - x1 - x2 - x3`.
    pub fn omega(&self) -> LElt {
        LElt::normalize(*self, [-1, -1, -1], 1)
    }

    /// The dominant element `c + 2*omega`.
    pub fn dom(&self) -> LElt {
        self.c() + self.omega() * 2
    }

    /// `x_i + omega`.
    pub fn xbar(&self, i: usize) -> LElt {
        self.x(i) + self.omega()
    }

    /// Points `0 <= x <= dom` in lexicographic `(l1,l2,l3)` order.
    pub fn cuboid(&self) -> Vec<LElt> {
        let mut out = Vec::with_capacity(self.stab_rank() as usize);
        for l1 in 0..=self.0[0] - 2 {
            for l2 in 0..=self.0[1] - 2 {
                for l3 in 0..=self.0[2] - 2 {
                    out.push(LElt {
                        w: *self,
                        l: [l1, l2, l3],
                        m: 0,
                    });
                }
            }
        }
        out
    }

    /// Position of a cuboid point in [`WeightTriple::cuboid`] order.
    pub fn cuboid_index(&self, x: &LElt) -> Option<usize> {
        if !x.in_cuboid() || x.w != *self {
            return None;
        }
        let [l1, l2, l3] = x.l;
        let (s2, s3) = (self.0[1] - 1, self.0[2] - 1);
        Some(((l1 * s2 + l2) * s3 + l3) as usize)
    }

    pub fn invariants(&self) -> TripleInvariants {
        TripleInvariants {
            weights: *self,
            chi: self.euler_characteristic(),
            pbar: self.pbar(),
            gorenstein: self.gorenstein_number(),
            omega: self.omega(),
            dom: self.dom(),
        }
    }
}

/// Numerical data attached to a weight triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleInvariants {
    pub weights: WeightTriple,
    pub chi: Rational64,
    pub pbar: i64,
    pub gorenstein: i64,
    pub omega: LElt,
    pub dom: LElt,
}

/// An element of `L` in normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LElt {
    w: WeightTriple,
    l: [i64; 3],
    m: i64,
}

impl LElt {
    /// Normal form of `n1*x1 + n2*x2 + n3*x3 + nc*c`.
    pub fn normalize(w: WeightTriple, n: [i64; 3], nc: i64) -> LElt {
        let mut l = [0; 3];
        let mut m = nc;
        for i in 0..3 {
            let (q, r) = n[i].div_mod_floor(&w.0[i]);
            l[i] = r;
            m += q;
        }
        LElt { w, l, m }
    }

    pub fn weights(&self) -> WeightTriple {
        self.w
    }

    pub fn l(&self) -> [i64; 3] {
        self.l
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    fn check_same(&self, other: &LElt) -> Result<()> {
        if self.w == other.w {
            Ok(())
        } else {
            Err(Error::MixedWeights(self.w, other.w))
        }
    }

    pub fn try_add(&self, other: &LElt) -> Result<LElt> {
        self.check_same(other)?;
        Ok(LElt::normalize(
            self.w,
            [
                self.l[0] + other.l[0],
                self.l[1] + other.l[1],
                self.l[2] + other.l[2],
            ],
            self.m + other.m,
        ))
    }

    pub fn try_sub(&self, other: &LElt) -> Result<LElt> {
        self.check_same(other)?;
        Ok(*self + (-*other))
    }

    pub fn scale(&self, k: i64) -> LElt {
        LElt::normalize(self.w, self.l.map(|li| li * k), self.m * k)
    }

    pub fn is_zero(&self) -> bool {
        self.l == [0; 3] && self.m == 0
    }

    /// `x >= 0`, i.e. `x` lies in the monoid generated by `x1, x2, x3`.
    pub fn is_effective(&self) -> bool {
        self.m >= 0
    }

    /// `self <= other` in the partial order of `L`.
    pub fn leq(&self, other: &LElt) -> Result<bool> {
        Ok(other.try_sub(self)?.is_effective())
    }

    /// Membership in `Z c`.
    pub fn is_multiple_of_c(&self) -> bool {
        self.l == [0; 3]
    }

    /// `0 <= x <= dom`.
    pub fn in_cuboid(&self) -> bool {
        self.m == 0 && (0..3).all(|i| self.l[i] <= self.w.0[i] - 2)
    }

    /// The degree `delta`, additive with `delta(x_i) = pbar / p_i`.
    pub fn delta(&self) -> i64 {
        let pbar = self.w.pbar();
        (0..3).map(|i| self.l[i] * (pbar / self.w.0[i])).sum::<i64>() + self.m * pbar
    }

    /// Number of monomials of degree `x` in `k[x1,x2,x3]`.
    pub fn dim_p(&self) -> u64 {
        if self.m < 0 {
            0
        } else {
            let m = self.m as u64;
            (m + 2) * (m + 1) / 2
        }
    }

    /// Dimension of the graded piece `S_x` of the triangle singularity;
    /// equals `dim Hom(O(y), O(y+x))`.
    pub fn dim_s(&self) -> u64 {
        let below = LElt {
            w: self.w,
            l: self.l,
            m: self.m - 1,
        };
        self.dim_p() - below.dim_p()
    }
}

pub fn hom_dim(x: &LElt, y: &LElt) -> Result<u64> {
    Ok(y.try_sub(x)?.dim_s())
}

pub fn ext_dim(x: &LElt, y: &LElt) -> Result<u64> {
    let w = x.weights();
    Ok((x.try_add(&w.omega())?.try_sub(y)?).dim_s())
}

impl Add for LElt {
    type Output = LElt;

    /// # Panics
    /// If the two elements belong to different weight triples.
    fn add(self, rhs: LElt) -> LElt {
        self.try_add(&rhs).expect("adding elements of different groups")
    }
}

impl Sub for LElt {
    type Output = LElt;

    /// # Panics
    /// If the two elements belong to different weight triples.
    fn sub(self, rhs: LElt) -> LElt {
        self.try_sub(&rhs).expect("subtracting elements of different groups")
    }
}

impl Neg for LElt {
    type Output = LElt;

    fn neg(self) -> LElt {
        LElt::normalize(self.w, self.l.map(|li| -li), -self.m)
    }
}

impl Mul<i64> for LElt {
    type Output = LElt;

    fn mul(self, k: i64) -> LElt {
        self.scale(k)
    }
}

impl PartialOrd for LElt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on `(m, l1, l2, l3)`; a total order used for sorting, not
/// the partial order of the group.
impl Ord for LElt {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.w, self.m, self.l).cmp(&(other.w, other.m, other.l))
    }
}

impl fmt::Display for LElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(i64, &str)> = Vec::new();
        for (i, name) in ["x1", "x2", "x3"].iter().enumerate() {
            if self.l[i] != 0 {
                terms.push((self.l[i], name));
            }
        }
        if self.m != 0 {
            terms.push((self.m, "c"));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (coef, name)) in terms.iter().enumerate() {
            let sign = if *coef < 0 {
                "-"
            } else if k > 0 {
                "+"
            } else {
                ""
            };
            match coef.abs() {
                1 => write!(f, "{sign}{name}")?,
                a => write!(f, "{sign}{a}*{name}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for LElt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LElt", 2)?;
        st.serialize_field("l", &self.l)?;
        st.serialize_field("m", &self.m)?;
        st.end()
    }
}

/// Parses `"a*x1+b*x2+c*x3+d*c"` (terms in any order, `w` for omega) or the
/// bracket form `"[l1,l2,l3,m]"`.
pub fn parse_lelt(w: WeightTriple, input: &str) -> Result<LElt> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::parse(input, "empty expression"));
    }
    if let Some(inner) = s.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| Error::parse(input, "missing `]`"))?;
        let nums: Vec<i64> = inner
            .split(',')
            .map(|t| t.parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::parse(input, e.to_string()))?;
        if nums.len() != 4 {
            return Err(Error::parse(input, "bracket form needs four integers"));
        }
        return Ok(LElt::normalize(w, [nums[0], nums[1], nums[2]], nums[3]));
    }
    if s == "0" {
        return Ok(w.zero());
    }

    let mut acc = w.zero();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ if acc.is_zero() && rest.len() == s.len() => (1, rest),
            _ => return Err(Error::parse(input, "expected `+` or `-` between terms")),
        };
        if body.is_empty() {
            return Err(Error::parse(input, "dangling sign"));
        }
        let end = body[1..]
            .find(['+', '-'])
            .map_or(body.len(), |e| e + 1);
        let term = &body[..end];
        rest = &body[end..];
        let (coef, sym) = match term.split_once('*') {
            Some((k, sym)) => (
                k.parse::<i64>()
                    .map_err(|_| Error::parse(input, format!("bad coefficient `{k}`")))?,
                sym,
            ),
            None => (1, term),
        };
        let g = match sym {
            "x1" => w.x(0),
            "x2" => w.x(1),
            "x3" => w.x(2),
            "c" => w.c(),
            "w" | "omega" => w.omega(),
            "dom" => w.dom(),
            other => return Err(Error::parse(input, format!("unknown symbol `{other}`"))),
        };
        acc = acc + g * (sign * coef);
    }
    Ok(acc)
}
