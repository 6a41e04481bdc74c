//! Coxeter polynomials for the symbol families, cyclotomic factorization,
//! Calabi-Yau dimensions, Coxeter numbers, Orlov windows and the Nakayama
//! classifier.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ktheory::{coh_euler_matrix, stab_coxeter};
use crate::matrix::IntMatrix;
use crate::picard::{LElt, WeightTriple};
use crate::poly::IntPoly;
use crate::tubular::TubularType;

/// Symbols for the triangulated categories compared by the classifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeSymbol {
    /// Hereditary star with arms of `a-1`, `b-1`, `c-1` edges: `[a,b,c]`.
    Star([i64; 3]),
    /// Canonical algebra `(a,b,c)`.
    Canonical([i64; 3]),
    /// Stable category of vector bundles `<a,b,c>`.
    StableVect([i64; 3]),
    /// One-point extension of the canonical algebra `<a,b,c|1>`.
    ExtCanonical([i64; 3]),
    /// Nakayama algebra `A_n(r)`.
    Nakayama { n: i64, r: i64 },
}

impl TypeSymbol {
    fn checked(weights: [i64; 3]) -> Result<[i64; 3]> {
        WeightTriple::new(weights[0], weights[1], weights[2])?;
        Ok(weights)
    }

    pub fn star(a: i64, b: i64, c: i64) -> Result<Self> {
        Ok(TypeSymbol::Star(Self::checked([a, b, c])?))
    }

    pub fn canonical(a: i64, b: i64, c: i64) -> Result<Self> {
        Ok(TypeSymbol::Canonical(Self::checked([a, b, c])?))
    }

    pub fn stable_vect(a: i64, b: i64, c: i64) -> Result<Self> {
        Ok(TypeSymbol::StableVect(Self::checked([a, b, c])?))
    }

    pub fn ext_canonical(a: i64, b: i64, c: i64) -> Result<Self> {
        Ok(TypeSymbol::ExtCanonical(Self::checked([a, b, c])?))
    }

    pub fn nakayama(n: i64, r: i64) -> Result<Self> {
        if !(2 <= r && r <= n) {
            return Err(Error::InvalidSymbol(format!("A_{n}({r}) needs 2 <= r <= n")));
        }
        Ok(TypeSymbol::Nakayama { n, r })
    }

    /// Rank of the Grothendieck group, the degree of the Coxeter polynomial.
    pub fn rank(&self) -> i64 {
        match *self {
            TypeSymbol::Star([a, b, c]) => a + b + c - 2,
            TypeSymbol::Canonical([a, b, c]) => a + b + c - 1,
            TypeSymbol::StableVect([a, b, c]) => (a - 1) * (b - 1) * (c - 1),
            TypeSymbol::ExtCanonical([a, b, c]) => a + b + c,
            TypeSymbol::Nakayama { n, .. } => n,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            TypeSymbol::Star(_) => "star",
            TypeSymbol::Canonical(_) => "can",
            TypeSymbol::StableVect(_) => "svect",
            TypeSymbol::ExtCanonical(_) => "extcan",
            TypeSymbol::Nakayama { .. } => "nak",
        }
    }

    pub fn triple(&self) -> Option<WeightTriple> {
        match *self {
            TypeSymbol::Star(w)
            | TypeSymbol::Canonical(w)
            | TypeSymbol::StableVect(w)
            | TypeSymbol::ExtCanonical(w) => WeightTriple::new(w[0], w[1], w[2]).ok(),
            TypeSymbol::Nakayama { .. } => None,
        }
    }

    /// Same symbol with weights sorted ascending.
    pub fn canonical_form(&self) -> TypeSymbol {
        let s = |mut w: [i64; 3]| {
            w.sort_unstable();
            w
        };
        match *self {
            TypeSymbol::Star(w) => TypeSymbol::Star(s(w)),
            TypeSymbol::Canonical(w) => TypeSymbol::Canonical(s(w)),
            TypeSymbol::StableVect(w) => TypeSymbol::StableVect(s(w)),
            TypeSymbol::ExtCanonical(w) => TypeSymbol::ExtCanonical(s(w)),
            other => other,
        }
    }
}

impl fmt::Display for TypeSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeSymbol::Star([a, b, c]) => write!(f, "[{a},{b},{c}]"),
            TypeSymbol::Canonical([a, b, c]) => write!(f, "({a},{b},{c})"),
            TypeSymbol::StableVect([a, b, c]) => write!(f, "<{a},{b},{c}>"),
            TypeSymbol::ExtCanonical([a, b, c]) => write!(f, "<{a},{b},{c}|1>"),
            TypeSymbol::Nakayama { n, r } => write!(f, "A_{n}({r})"),
        }
    }
}

impl Serialize for TypeSymbol {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for TypeSymbol {
    type Err = Error;

    /// Grammar: `star:a,b,c`, `can:a,b,c`, `svect:a,b,c`, `extcan:a,b,c`,
    /// `nak:n,r`.
    fn from_str(s: &str) -> Result<Self> {
        let (tag, args) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidSymbol(s.to_string()))?;
        let nums: Vec<i64> = args
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidSymbol(s.to_string()))?;
        match (tag.trim(), nums.as_slice()) {
            ("star", &[a, b, c]) => TypeSymbol::star(a, b, c),
            ("can", &[a, b, c]) => TypeSymbol::canonical(a, b, c),
            ("svect", &[a, b, c]) => TypeSymbol::stable_vect(a, b, c),
            ("extcan", &[a, b, c]) => TypeSymbol::ext_canonical(a, b, c),
            ("nak", &[n, r]) => TypeSymbol::nakayama(n, r),
            _ => Err(Error::InvalidSymbol(s.to_string())),
        }
    }
}

/// Characteristic polynomial of `-C^{-T} C`.
pub fn coxeter_polynomial(cartan: &IntMatrix) -> Result<IntPoly> {
    let cinv_t = cartan.inverse_unimodular()?.transpose();
    cinv_t.mul(cartan)?.neg().charpoly()
}

/// Cartan matrix of an oriented tree: `C[u][v] = 1` iff there is a path
/// from `u` to `v`.
pub fn oriented_tree_cartan(vertices: usize, arrows: &[(usize, usize)]) -> IntMatrix {
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); vertices];
    for &(s, t) in arrows {
        out[s].push(t);
    }
    let mut c = IntMatrix::zeros(vertices, vertices);
    for u in 0..vertices {
        let mut stack = vec![u];
        while let Some(v) = stack.pop() {
            if c.get(u, v) == 0 {
                c.set(u, v, 1);
                stack.extend(out[v].iter().copied());
            }
        }
    }
    c
}

/// Orientation of the arms of a star.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarOrientation {
    Inward,
    Outward,
    Alternating,
}

/// Arrows of the star `[a,b,c]`; vertex 0 is the centre.
pub fn star_arrows(weights: [i64; 3], orientation: StarOrientation) -> (usize, Vec<(usize, usize)>) {
    let mut arrows = Vec::new();
    let mut next = 1usize;
    for p in weights {
        let mut prev = 0usize;
        for k in 1..p {
            let v = next;
            next += 1;
            let inward = match orientation {
                StarOrientation::Inward => true,
                StarOrientation::Outward => false,
                StarOrientation::Alternating => k % 2 == 1,
            };
            arrows.push(if inward { (v, prev) } else { (prev, v) });
            prev = v;
        }
    }
    (next, arrows)
}

pub fn star_cartan(weights: [i64; 3], orientation: StarOrientation) -> IntMatrix {
    let (n, arrows) = star_arrows(weights, orientation);
    oriented_tree_cartan(n, &arrows)
}

/// `C[i][j] = 1` iff `0 <= j - i < r`.
pub fn nakayama_cartan(n: i64, r: i64) -> IntMatrix {
    let n = n as usize;
    IntMatrix::from_fn(n, n, |i, j| i64::from(j >= i && j - i < r as usize))
}

/// Vertex of the canonical algebra whose projective defines the one-point
/// extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtVertex {
    /// Projective `O(c)` (last basis element).
    Top,
    /// Projective `O` (first basis element).
    Bottom,
}

/// Calibrated against `A_11(4)` and `A_11(5)`.
pub const DEFAULT_EXT_VERTEX: ExtVertex = ExtVertex::Top;

/// `[[C, C e_k], [0, 1]]` for the Euler matrix `C` of the canonical algebra.
pub fn ext_canonical_gram(w: WeightTriple, vertex: ExtVertex) -> Result<IntMatrix> {
    let c = coh_euler_matrix(w)?;
    let n = c.rows();
    let k = match vertex {
        ExtVertex::Top => n - 1,
        ExtVertex::Bottom => 0,
    };
    Ok(IntMatrix::from_fn(n + 1, n + 1, |i, j| match (i < n, j < n) {
        (true, true) => c.get(i, j),
        (true, false) => c.get(i, k),
        (false, true) => 0,
        (false, false) => 1,
    }))
}

/// `(x - 1)^2 v_a v_b v_c`.
pub fn canonical_coxpol(w: WeightTriple) -> IntPoly {
    let xm1 = IntPoly::u(1);
    let mut p = &xm1 * &xm1;
    for a in w.weights() {
        p = &p * &IntPoly::v(a as usize);
    }
    p
}

/// The product formula in the `u_n = x^n - 1`, including `u_1` in the
/// denominator.
pub fn stable_vect_coxpol(w: WeightTriple) -> Result<IntPoly> {
    let [a, b, c] = w.weights();
    let l = a.lcm(&b).lcm(&c);
    let u = |n: i64| IntPoly::u(n as usize);
    let mut num = u(l).pow((a * b * c / l) as u32);
    for p in [a, b, c] {
        num = &num * &u(p);
    }
    let mut den = u(1);
    for (p, q) in [(a, b), (b, c), (c, a)] {
        den = &den * &u(p.lcm(&q)).pow(p.gcd(&q) as u32);
    }
    num.div_exact(&den)
}

pub fn coxpol(symbol: &TypeSymbol) -> Result<IntPoly> {
    let p = match *symbol {
        TypeSymbol::Star(w) => coxeter_polynomial(&star_cartan(w, StarOrientation::Inward))?,
        TypeSymbol::Canonical(_) => canonical_coxpol(symbol.triple().expect("valid weights")),
        TypeSymbol::StableVect(_) => stable_vect_coxpol(symbol.triple().expect("valid weights"))?,
        TypeSymbol::ExtCanonical(_) => {
            let w = symbol.triple().expect("valid weights");
            coxeter_polynomial(&ext_canonical_gram(w, DEFAULT_EXT_VERTEX)?)?
        }
        TypeSymbol::Nakayama { n, r } => coxeter_polynomial(&nakayama_cartan(n, r))?,
    };
    if p.degree() != Some(symbol.rank() as usize) {
        return Err(Error::Internal(format!("Coxeter polynomial of {symbol} has degree {:?}", p.degree())));
    }
    Ok(p)
}

/// `prod Phi_d^k * remainder`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycloFactorization {
    pub factors: Vec<(u64, u32)>,
    pub remainder: IntPoly,
}

impl CycloFactorization {
    /// True when the remainder is `1` or `-1`.
    pub fn is_complete(&self) -> bool {
        self.remainder.is_unit()
    }

    pub fn product(&self) -> IntPoly {
        self.factors
            .iter()
            .fold(self.remainder.clone(), |acc, &(d, k)| &acc * &cyclotomic(d).pow(k))
    }
}

impl fmt::Display for CycloFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(d, k)| if k == 1 { format!("F{d}") } else { format!("F{d}^{k}") })
            .collect();
        let one = IntPoly::one();
        if self.remainder == -&one {
            parts.insert(0, "-1".into());
        } else if self.remainder != one {
            parts.push(format!("({})", self.remainder));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

fn mobius_and_divisors(d: u64) -> Vec<(u64, i32)> {
    let mut primes = Vec::new();
    let mut m = d;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            primes.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    // Only squarefree divisors of d have nonzero Moebius value.
    (0..1u32 << primes.len())
        .map(|mask| {
            let mut q = 1;
            for (i, p) in primes.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    q *= p;
                }
            }
            let mu = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            (d / q, mu)
        })
        .collect()
}

/// `Phi_d = prod_{e | d} (x^e - 1)^{mu(d/e)}`.
pub fn cyclotomic(d: u64) -> IntPoly {
    assert!(d >= 1, "cyclotomic index must be positive");
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for (e, mu) in mobius_and_divisors(d) {
        let f = IntPoly::u(e as usize);
        if mu > 0 {
            num = &num * &f;
        } else {
            den = &den * &f;
        }
    }
    num.div_exact(&den).expect("cyclotomic quotient is exact")
}

fn totients(limit: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=limit as u64).collect();
    for i in 2..=limit {
        if phi[i] == i as u64 {
            for j in (i..=limit).step_by(i) {
                phi[j] -= phi[j] / i as u64;
            }
        }
    }
    phi
}

/// Factors out every cyclotomic `Phi_d` dividing `p`. A floating-point
/// evaluation at `exp(2 pi i / d)` screens candidates and exact division
/// decides.
pub fn factor_cyclotomic(p: &IntPoly) -> Result<CycloFactorization> {
    let deg = p
        .degree()
        .ok_or_else(|| Error::Precondition("cannot factor the zero polynomial".into()))?;
    if !p.leading().is_some_and(|c| c.abs() == BigInt::from(1)) {
        return Err(Error::Precondition(format!("{p} is not monic up to sign")));
    }
    let limit = 2 * deg * deg + 2;
    let phi = totients(limit);
    let floats: Option<Vec<f64>> = p
        .coeffs()
        .iter()
        .map(|c| c.to_f64().filter(|v| v.abs() < 2f64.powi(52)))
        .collect();
    let scale: f64 = floats.as_ref().map_or(0.0, |v| v.iter().map(|c| c.abs()).sum());
    let mut rest = p.clone();
    let mut factors = Vec::new();
    for d in 1..=limit as u64 {
        let Some(cur_deg) = rest.degree() else { break };
        if cur_deg == 0 {
            break;
        }
        if phi[d as usize] as usize > cur_deg {
            continue;
        }
        if let Some(v) = &floats {
            let z = Complex64::from_polar(1.0, 2.0 * PI / d as f64);
            let val = v.iter().rev().fold(Complex64::zero(), |acc, &c| acc * z + c);
            if val.norm() > 1e-8 * scale * (deg as f64 + 1.0) {
                continue;
            }
        }
        let f = cyclotomic(d);
        let mut k = 0;
        while let Ok((q, r)) = rest.div_rem(&f) {
            if !r.is_zero() {
                break;
            }
            rest = q;
            k += 1;
        }
        if k > 0 {
            factors.push((d, k));
        }
    }
    Ok(CycloFactorization {
        factors,
        remainder: rest,
    })
}

/// Calabi-Yau dimension as an uncanceled fraction plus its reduced value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyDimension {
    pub numerator: i64,
    pub denominator: i64,
    #[serde(serialize_with = "ser_rational")]
    pub canceled: Rational64,
    pub case: &'static str,
}

impl fmt::Display for CyDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

fn ser_rational<S: serde::Serializer>(q: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

pub fn cy_dimension(w: WeightTriple) -> CyDimension {
    let [a, b, c] = w.sorted().weights();
    let (numerator, denominator, case) = if a == 2 && b == 2 {
        if c == 2 {
            (0, 1, "2,2,n")
        } else {
            (c - 2, c, "2,2,n")
        }
    } else if a == 2 {
        let l = b.lcm(&c);
        (2 * l - 2 * l / b - 2 * l / c, l, "2,a,b")
    } else {
        let l = w.pbar();
        (3 * l - 2 * l / a - 2 * l / b - 2 * l / c, l, "a,b,c")
    };
    CyDimension {
        numerator,
        denominator,
        canceled: Rational64::new(numerator, denominator),
        case,
    }
}

/// `n` for `(2,2,n)`, `lcm` of the weights otherwise.
pub fn coxeter_number_formula(w: WeightTriple) -> i64 {
    let s = w.sorted().weights();
    if s[0] == 2 && s[1] == 2 {
        s[2]
    } else {
        w.pbar()
    }
}

/// Coxeter number, checked against the order of the Coxeter matrix.
pub fn coxeter_number(w: WeightTriple) -> Result<i64> {
    let h = coxeter_number_formula(w);
    let order = stab_coxeter(w)?.order(4 * w.pbar() as u64)? as i64;
    if order != h {
        return Err(Error::Internal(format!("Coxeter number of {w}: formula {h}, matrix order {order}")));
    }
    Ok(h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrlovVerdict {
    /// The stable category embeds into the derived category.
    EmbedsInto,
    Equivalent,
    /// The stable category contains the derived category.
    Contains,
}

impl fmt::Display for OrlovVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrlovVerdict::EmbedsInto => "embeds-into",
            OrlovVerdict::Equivalent => "equivalent",
            OrlovVerdict::Contains => "contains",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrlovData {
    pub gorenstein: i64,
    pub verdict: OrlovVerdict,
    pub window: Vec<LElt>,
}

/// Twists `x` with `delta(omega) < delta(x) <= 0` (positive Gorenstein
/// number) or `0 <= delta(x) < delta(omega)` (negative).
pub fn orlov_trichotomy(w: WeightTriple) -> OrlovData {
    let a = w.gorenstein_number();
    let dw = w.omega().delta();
    let pbar = w.pbar();
    let verdict = match a.signum() {
        1 => OrlovVerdict::EmbedsInto,
        0 => OrlovVerdict::Equivalent,
        _ => OrlovVerdict::Contains,
    };
    let (lo, hi) = match verdict {
        OrlovVerdict::EmbedsInto => (dw + 1, 0),
        OrlovVerdict::Contains => (0, dw - 1),
        OrlovVerdict::Equivalent => (1, 0),
    };
    let mut window = Vec::new();
    if lo <= hi {
        let [p1, p2, p3] = w.weights();
        for l1 in 0..p1 {
            for l2 in 0..p2 {
                for l3 in 0..p3 {
                    let base = LElt::normalize(w, [l1, l2, l3], 0);
                    let d0 = base.delta();
                    let m_lo = Integer::div_ceil(&(lo - d0), &pbar);
                    let m_hi = Integer::div_floor(&(hi - d0), &pbar);
                    for m in m_lo..=m_hi {
                        window.push(LElt::normalize(w, [l1, l2, l3], m));
                    }
                }
            }
        }
    }
    window.sort_by_key(|x| (x.delta(), *x));
    OrlovData {
        gorenstein: a,
        verdict,
        window,
    }
}

/// Candidate symbols of a given rank with sorted weights up to `bound`.
pub fn symbols_of_rank(n: i64, bound: i64) -> Vec<TypeSymbol> {
    let mut out = Vec::new();
    for a in 2..=bound {
        for b in a..=bound {
            for c in b..=bound {
                let w = [a, b, c];
                if a + b + c - 2 == n {
                    out.push(TypeSymbol::Star(w));
                }
                if a + b + c - 1 == n {
                    out.push(TypeSymbol::Canonical(w));
                }
                if (a - 1) * (b - 1) * (c - 1) == n {
                    out.push(TypeSymbol::StableVect(w));
                }
                if a + b + c == n {
                    out.push(TypeSymbol::ExtCanonical(w));
                }
            }
        }
    }
    out.sort();
    out
}

pub fn classifier_weight_bound(n: i64) -> i64 {
    (n + 1).max(12)
}

/// Classifier output for one Nakayama algebra. Matches certify equality of
/// Coxeter polynomials only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub n: i64,
    pub r: i64,
    pub coxpol: IntPoly,
    pub matches: Vec<TypeSymbol>,
    pub spontaneous: Vec<TypeSymbol>,
}

impl Classification {
    pub fn contains(&self, s: &TypeSymbol) -> bool {
        self.matches.contains(&s.canonical_form())
    }
}

/// A stable-vect match `<a,b,c>` that is not the Happel-Seidel partner
/// `<2,a,b>` with `r` in `{a, b}`. Relation lengths `r >= n` all give the
/// same algebra, so both sides are capped at `n`.
pub fn is_spontaneous(symbol: &TypeSymbol, n: i64, r: i64) -> bool {
    match symbol.canonical_form() {
        TypeSymbol::StableVect([a, b, c]) => {
            let r = r.min(n);
            !(a == 2 && (r == b.min(n) || r == c.min(n)) && (b - 1) * (c - 1) == n)
        }
        _ => false,
    }
}

fn candidate_polys(n: i64) -> Result<Vec<(TypeSymbol, IntPoly)>> {
    symbols_of_rank(n, classifier_weight_bound(n))
        .into_iter()
        .map(|s| Ok((s, coxpol(&s)?)))
        .collect()
}

fn classify_with(n: i64, r: i64, candidates: &[(TypeSymbol, IntPoly)]) -> Result<Classification> {
    let target = coxpol(&TypeSymbol::nakayama(n, r)?)?;
    let matches: Vec<TypeSymbol> = candidates
        .iter()
        .filter(|(_, p)| *p == target)
        .map(|(s, _)| *s)
        .collect();
    let spontaneous = matches.iter().copied().filter(|s| is_spontaneous(s, n, r)).collect();
    Ok(Classification {
        n,
        r,
        coxpol: target,
        matches,
        spontaneous,
    })
}

pub fn classify_nakayama(n: i64, r: i64) -> Result<Classification> {
    TypeSymbol::nakayama(n, r)?;
    classify_with(n, r, &candidate_polys(n)?)
}

/// All cells `(n, r)`, `2 <= r <= n <= max_n`, in `(n, r)` order.
pub fn classify_table(max_n: i64) -> Result<Vec<Classification>> {
    let rows: Vec<Result<Vec<Classification>>> = (2..=max_n)
        .into_par_iter()
        .map(|n| {
            let cands = candidate_polys(n)?;
            (2..=n).map(|r| classify_with(n, r, &cands)).collect()
        })
        .collect();
    let mut out = Vec::new();
    for row in rows {
        out.extend(row?);
    }
    Ok(out)
}

/// Solves `n = (a-1)(b-1)` and `chi = 1/a + 1/b - 1/2` for `a <= b`.
pub fn recover_2ab(n: i64, chi: Rational64) -> Option<(i64, i64)> {
    let half = Rational64::new(1, 2);
    if chi >= half {
        return None;
    }
    let p = Rational64::from_integer(n - 1) / (half - chi);
    let s = p * (chi + half);
    if !p.is_integer() || !s.is_integer() {
        return None;
    }
    let (p, s) = (p.to_integer(), s.to_integer());
    let disc = s * s - 4 * p;
    if disc < 0 {
        return None;
    }
    let root = num_integer::Roots::sqrt(&disc);
    if root * root != disc || (s - root) % 2 != 0 {
        return None;
    }
    let (a, b) = ((s - root) / 2, (s + root) / 2);
    (a >= 2).then_some((a, b))
}

/// `chi(A_n(a)) = chi(A_n(b)) = chi(<2,a,b>)` with `n = (a-1)(b-1)`.
pub fn happel_seidel_holds(a: i64, b: i64) -> Result<bool> {
    let n = (a - 1) * (b - 1);
    let sv = coxpol(&TypeSymbol::stable_vect(2, a, b)?)?;
    let na = coxpol(&TypeSymbol::nakayama(n, a.min(n).max(2))?)?;
    let nb = coxpol(&TypeSymbol::nakayama(n, b.min(n).max(2))?)?;
    Ok(na == sv && nb == sv)
}

/// Every morphism `X -> Y` of indecomposables factors through line bundles
/// when `mu(Y) - mu(X) > delta(x1 + omega)`; requires positive Euler
/// characteristic, with `x1` of weight 2.
pub fn domestic_factorization(w: WeightTriple, mu_x: Rational64, mu_y: Rational64) -> Result<bool> {
    let chi = w.euler_characteristic();
    if chi <= Rational64::zero() {
        return Err(Error::WrongRegime {
            regime: "domestic",
            required: "chi > 0",
            chi: chi.to_string(),
        });
    }
    let s = w.sorted();
    let bound = (s.x(0) + s.omega()).delta();
    Ok(mu_y - mu_x > Rational64::from_integer(bound))
}

/// Every morphism `E -> E'` of indecomposables factors through line bundles
/// when `q' > alpha(q)`; requires Euler characteristic zero.
pub fn tubular_factorization(w: WeightTriple, q: Rational64, q_prime: Rational64) -> Result<bool> {
    let t = TubularType::from_triple(w).ok_or_else(|| Error::WrongRegime {
        regime: "tubular",
        required: "chi = 0",
        chi: w.euler_characteristic().to_string(),
    })?;
    Ok(q_prime > t.alpha(q))
}

/// Entries of the `(2,3,n)` table with the printed values for comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdeRow {
    pub n: i64,
    pub cy: CyDimension,
    #[serde(serialize_with = "ser_rational")]
    pub chi: Rational64,
    pub h: i64,
    pub kind: String,
    pub flags: Vec<String>,
}

/// Printed CY and `h` values of the `(2,3,n)` table for `2 <= n <= 9`.
pub const PRINTED_ADE: [(i64, (i64, i64), i64); 8] = [
    (2, (1, 3), 3),
    (3, (2, 3), 6),
    (4, (10, 12), 24),
    (5, (14, 15), 30),
    (6, (6, 6), 6),
    (7, (22, 21), 42),
    (8, (26, 24), 24),
    (9, (10, 9), 18),
];

fn dynkin_label(p: &IntPoly, rank: i64) -> Option<String> {
    let n = rank as usize;
    if *p == IntPoly::v(n + 1) {
        return Some(format!("A{n}"));
    }
    if n >= 4 {
        let d = &IntPoly::from_i64(&[1, 1]) * &(&IntPoly::u(n - 1) + &IntPoly::constant(2));
        if *p == d {
            return Some(format!("D{n}"));
        }
    }
    let e = match n {
        6 => &cyclotomic(3) * &cyclotomic(12),
        7 => &cyclotomic(2) * &cyclotomic(18),
        8 => cyclotomic(30),
        _ => return None,
    };
    (*p == e).then(|| format!("E{n}"))
}

pub fn ade_table(max_p: i64) -> Result<Vec<AdeRow>> {
    (2..=max_p)
        .map(|n| {
            let w = WeightTriple::new(2, 3, n)?;
            let cy = cy_dimension(w);
            let h = coxeter_number(w)?;
            let chi = w.euler_characteristic();
            let p = stable_vect_coxpol(w)?;
            let kind = if chi > Rational64::zero() {
                dynkin_label(&p, w.stab_rank()).unwrap_or_else(|| "?".into())
            } else if chi.is_zero() {
                format!("(2,3,{n})")
            } else {
                format!("<2,3,{n}>")
            };
            let mut flags = Vec::new();
            if let Some(&(_, (pn, pd), ph)) = PRINTED_ADE.iter().find(|e| e.0 == n) {
                if (cy.numerator, cy.denominator) != (pn, pd) {
                    flags.push(format!("paper-discrepancy: printed CY {pn}/{pd}"));
                }
                if h != ph {
                    flags.push(format!("paper-discrepancy: printed h {ph}"));
                }
            }
            Ok(AdeRow {
                n,
                cy,
                chi,
                h,
                kind,
                flags,
            })
        })
        .collect()
}

/// Groups classifier matches by tag, for reporting.
pub fn matches_by_tag(c: &Classification) -> BTreeMap<&'static str, Vec<String>> {
    let mut m: BTreeMap<&'static str, Vec<String>> = BTreeMap::new();
    for s in &c.matches {
        m.entry(s.tag()).or_default().push(s.to_string());
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: i64, b: i64, c: i64) -> WeightTriple {
        WeightTriple::new(a, b, c).unwrap()
    }

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    // Frozen Dynkin Coxeter polynomials.
    fn type_a(n: usize) -> IntPoly {
        IntPoly::v(n + 1)
    }

    fn type_d(n: usize) -> IntPoly {
        let mut c = vec![0i64; n + 1];
        c[0] = 1;
        c[1] = 1;
        c[n - 1] += 1;
        c[n] += 1;
        p(&c)
    }

    fn e6() -> IntPoly {
        // (x^2+x+1)(x^4-x^2+1)
        p(&[1, 1, 0, -1, 0, 1, 1])
    }

    fn e7() -> IntPoly {
        // (x+1)(x^6-x^3+1)
        p(&[1, 1, 0, -1, -1, 0, 1, 1])
    }

    fn e8() -> IntPoly {
        p(&[1, 1, 0, -1, -1, -1, 0, 1, 1])
    }

    #[test]
    fn frozen_oracles_are_cyclotomic_products() {
        assert_eq!(e6(), &cyclotomic(3) * &cyclotomic(12));
        assert_eq!(e7(), &cyclotomic(2) * &cyclotomic(18));
        assert_eq!(e8(), cyclotomic(30));
        assert_eq!(type_d(4), p(&[1, 1, 0, 1, 1]));
    }

    #[test]
    fn cyclotomic_values() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(2), p(&[1, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(30).degree(), Some(8));
        assert_eq!(cyclotomic(105).coeff(7), BigInt::from(-2));
    }

    #[test]
    fn factorization_examples() {
        let f = factor_cyclotomic(&stable_vect_coxpol(w(2, 3, 7)).unwrap()).unwrap();
        assert_eq!(f.to_string(), "F42");
        assert!(f.is_complete());
        let f = factor_cyclotomic(&stable_vect_coxpol(w(2, 3, 9)).unwrap()).unwrap();
        assert_eq!(f.to_string(), "F2^2*F6*F18^2");
        assert_eq!(factor_cyclotomic(&p(&[-1, 1])).unwrap().to_string(), "F1");
        let q = p(&[1, 1, 1, 1, 1, 1, 2]);
        assert!(factor_cyclotomic(&q).is_err());
        let q = &p(&[-1, 0, 1, 1]) * &cyclotomic(5);
        let f = factor_cyclotomic(&q).unwrap();
        assert_eq!(f.factors, vec![(5, 1)]);
        assert_eq!(f.product(), q);
        assert!(!f.is_complete());
    }

    #[test]
    fn stable_vect_formula_examples() {
        assert_eq!(stable_vect_coxpol(w(2, 2, 2)).unwrap(), p(&[1, 1]));
        assert_eq!(stable_vect_coxpol(w(2, 3, 7)).unwrap(), cyclotomic(42));
        for t in [w(2, 3, 7), w(3, 5, 7), w(2, 5, 7)] {
            let [a, b, c] = t.weights();
            let u = |n: i64| IntPoly::u(n as usize);
            let num = &(&(&u(a * b * c) * &u(a)) * &u(b)) * &u(c);
            let den = &(&u(a * b) * &u(b * c)) * &u(c * a);
            let short = num.div_exact(&den).unwrap();
            let general = stable_vect_coxpol(t).unwrap();
            assert_eq!(short.degree().unwrap(), general.degree().unwrap() + 1);
            assert_eq!(short, &general * &u(1));
        }
    }

    #[test]
    fn structural_identity_small() {
        for a in 2..=5 {
            for b in a..=5 {
                for c in b..=5 {
                    let t = w(a, b, c);
                    let m = stab_coxeter(t).unwrap().charpoly().unwrap();
                    assert_eq!(m, stable_vect_coxpol(t).unwrap(), "{t}");
                }
            }
        }
    }

    #[test]
    fn dynkin_identifications() {
        for n in 2..=10usize {
            assert_eq!(stable_vect_coxpol(w(2, 2, n as i64)).unwrap(), type_a(n - 1));
        }
        assert_eq!(stable_vect_coxpol(w(2, 3, 3)).unwrap(), type_d(4));
        assert_eq!(stable_vect_coxpol(w(2, 3, 4)).unwrap(), e6());
        assert_eq!(stable_vect_coxpol(w(2, 3, 5)).unwrap(), e8());
        assert_eq!(coxpol(&TypeSymbol::star(2, 2, 5).unwrap()).unwrap(), type_d(7));
        assert_eq!(coxpol(&TypeSymbol::star(2, 3, 3).unwrap()).unwrap(), e6());
        assert_eq!(coxpol(&TypeSymbol::star(2, 3, 4).unwrap()).unwrap(), e7());
        assert_eq!(coxpol(&TypeSymbol::star(2, 3, 5).unwrap()).unwrap(), e8());
    }

    #[test]
    fn star_orientation_independence() {
        for s in [[2, 2, 5], [2, 3, 5], [3, 4, 6], [2, 5, 5]] {
            let polys: Vec<IntPoly> = [StarOrientation::Inward, StarOrientation::Outward, StarOrientation::Alternating]
                .iter()
                .map(|o| coxeter_polynomial(&star_cartan(s, *o)).unwrap())
                .collect();
            assert_eq!(polys[0], polys[1]);
            assert_eq!(polys[0], polys[2]);
        }
    }

    #[test]
    fn nakayama_extremes() {
        for n in 2..=12 {
            assert_eq!(coxpol(&TypeSymbol::nakayama(n, 2).unwrap()).unwrap(), type_a(n as usize), "A_{n}(2)");
            assert_eq!(coxpol(&TypeSymbol::nakayama(n, n).unwrap()).unwrap(), type_a(n as usize));
        }
    }

    #[test]
    fn canonical_formula_matches_euler_matrix() {
        for t in [w(2, 3, 6), w(2, 4, 4), w(3, 3, 3), w(2, 3, 7), w(3, 4, 5), w(2, 2, 2)] {
            let m = coh_euler_matrix(t).unwrap();
            assert_eq!(coxeter_polynomial(&m).unwrap(), canonical_coxpol(t), "{t}");
        }
    }

    #[test]
    fn tubular_equivalences() {
        for t in [w(2, 3, 6), w(2, 4, 4), w(3, 3, 3)] {
            assert_eq!(stable_vect_coxpol(t).unwrap(), canonical_coxpol(t));
        }
    }

    #[test]
    fn ext_canonical_vertex_calibration() {
        let t = w(2, 4, 5);
        let target = coxpol(&TypeSymbol::nakayama(11, 4).unwrap()).unwrap();
        let top = coxeter_polynomial(&ext_canonical_gram(t, ExtVertex::Top).unwrap()).unwrap();
        let bottom = coxeter_polynomial(&ext_canonical_gram(t, ExtVertex::Bottom).unwrap()).unwrap();
        let default = coxpol(&TypeSymbol::ext_canonical(2, 4, 5).unwrap()).unwrap();
        assert_eq!(default, target);
        assert_eq!(coxpol(&TypeSymbol::nakayama(11, 5).unwrap()).unwrap(), target);
        assert!(top == target || bottom == target);
    }

    #[test]
    fn happel_seidel_symmetry() {
        for a in 2..=8 {
            for b in a.max(3)..=8 {
                assert!(happel_seidel_holds(a, b).unwrap(), "({a},{b})");
            }
        }
    }

    #[test]
    fn cy_dimensions() {
        let d = cy_dimension(w(2, 3, 7));
        assert_eq!((d.numerator, d.denominator), (22, 21));
        let d = cy_dimension(w(2, 3, 4));
        assert_eq!((d.numerator, d.denominator), (10, 12));
        let d = cy_dimension(w(3, 4, 5));
        assert_eq!((d.numerator, d.denominator), (86, 60));
        assert_eq!(d.canceled, Rational64::new(43, 30));
        assert_eq!(cy_dimension(w(7, 3, 2)), cy_dimension(w(2, 3, 7)));
        for a in 2..=8 {
            for b in a..=8 {
                for c in b..=8 {
                    let t = w(a, b, c);
                    let one = Rational64::from_integer(1);
                    assert_eq!(cy_dimension(t).canceled, one - t.euler_characteristic() * 2, "{t}");
                }
            }
        }
    }

    #[test]
    fn coxeter_numbers() {
        assert_eq!(coxeter_number(w(2, 3, 7)).unwrap(), 42);
        assert_eq!(coxeter_number(w(2, 2, 6)).unwrap(), 6);
        assert_eq!(coxeter_number(w(2, 3, 8)).unwrap(), 24);
        assert_eq!(coxeter_number(w(2, 3, 4)).unwrap(), 12);
        assert_eq!(coxeter_number(w(6, 2, 2)).unwrap(), 6);
    }

    #[test]
    fn orlov_examples() {
        let o = orlov_trichotomy(w(2, 3, 5));
        assert_eq!((o.gorenstein, o.verdict), (1, OrlovVerdict::EmbedsInto));
        assert_eq!(o.window, vec![w(2, 3, 5).zero()]);
        let o = orlov_trichotomy(w(2, 3, 6));
        assert_eq!(o.verdict, OrlovVerdict::Equivalent);
        assert!(o.window.is_empty());
        let o = orlov_trichotomy(w(2, 3, 7));
        assert_eq!((o.gorenstein, o.verdict), (-1, OrlovVerdict::Contains));
        assert_eq!(o.window, vec![w(2, 3, 7).zero()]);
        for a in 2..=7 {
            for b in a..=7 {
                for c in b..=7 {
                    let t = w(a, b, c);
                    let o = orlov_trichotomy(t);
                    assert_eq!(o.window.len() as i64, o.gorenstein.abs(), "{t}");
                }
            }
        }
    }

    #[test]
    fn classifier_examples() {
        let c = classify_nakayama(12, 3).unwrap();
        assert!(c.contains(&TypeSymbol::stable_vect(2, 3, 7).unwrap()));
        let c = classify_nakayama(7, 3).unwrap();
        assert!(c.contains(&TypeSymbol::star(2, 3, 4).unwrap()));
        let c = classify_nakayama(8, 6).unwrap();
        let s = TypeSymbol::stable_vect(2, 3, 5).unwrap();
        assert!(c.contains(&s));
        assert!(c.spontaneous.contains(&s));
        let c = classify_nakayama(12, 4).unwrap();
        assert!(c.spontaneous.is_empty());
        for n in 3..=10 {
            assert!(classify_nakayama(n, n).unwrap().spontaneous.is_empty(), "A_{n}({n})");
        }
        assert!(c.contains(&TypeSymbol::stable_vect(2, 4, 5).unwrap()));
        assert!(classify_nakayama(3, 4).is_err());
    }

    #[test]
    fn weight_recovery() {
        for a in 3..=9 {
            for b in a..=9 {
                let t = w(2, a, b);
                assert_eq!(recover_2ab(t.stab_rank(), t.euler_characteristic()), Some((a, b)));
            }
        }
    }

    #[test]
    fn symbol_grammar() {
        assert_eq!("svect:2,3,7".parse::<TypeSymbol>().unwrap(), TypeSymbol::StableVect([2, 3, 7]));
        assert_eq!("nak:12,3".parse::<TypeSymbol>().unwrap().to_string(), "A_12(3)");
        assert_eq!("extcan:2,4,5".parse::<TypeSymbol>().unwrap().to_string(), "<2,4,5|1>");
        assert_eq!("star:2,2,5".parse::<TypeSymbol>().unwrap().to_string(), "[2,2,5]");
        assert_eq!("can:2,3,6".parse::<TypeSymbol>().unwrap().to_string(), "(2,3,6)");
        for bad in ["svect:1,3,7", "nak:3,4", "foo:1", "svect:2,3", "svect"] {
            assert!(bad.parse::<TypeSymbol>().is_err(), "{bad}");
        }
    }

    #[test]
    fn factorization_predicates() {
        let t = w(2, 2, 6);
        let bound = Rational64::from_integer((t.x(0) + t.omega()).delta());
        let zero = Rational64::zero();
        assert!(domestic_factorization(t, zero, bound + 1).unwrap());
        assert!(!domestic_factorization(t, zero, bound).unwrap());
        let t = w(2, 3, 6);
        assert!(!tubular_factorization(t, zero, Rational64::from_integer(-2)).unwrap());
        assert!(!tubular_factorization(t, zero, Rational64::from_integer(3)).unwrap());
        assert!(tubular_factorization(t, zero, Rational64::new(7, 2)).unwrap());
        assert!(matches!(domestic_factorization(t, zero, zero), Err(Error::WrongRegime { .. })));
        assert!(matches!(tubular_factorization(w(2, 3, 7), zero, zero), Err(Error::WrongRegime { .. })));
    }

    #[test]
    fn ade_rows() {
        let rows = ade_table(9).unwrap();
        let kinds: Vec<&str> = rows.iter().map(|r| r.kind.as_str()).collect();
        assert_eq!(kinds, vec!["A2", "D4", "E6", "E8", "(2,3,6)", "<2,3,7>", "<2,3,8>", "<2,3,9>"]);
        let flagged: Vec<i64> = rows.iter().filter(|r| !r.flags.is_empty()).map(|r| r.n).collect();
        assert_eq!(flagged, vec![4]);
        for r in &rows {
            let printed = PRINTED_ADE.iter().find(|e| e.0 == r.n).unwrap().1;
            assert_eq!((r.cy.numerator, r.cy.denominator), printed);
        }
    }
}
