//! Invariant suites run by the `check` subcommand.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use rayon::prelude::*;
use serde::Serialize;

use crate::bundles::{shom_dims, ExtBundleExpr};
use crate::coxzoo::{
    coxeter_number, cy_dimension, factor_cyclotomic, happel_seidel_holds, orlov_trichotomy, stable_vect_coxpol,
};
use crate::error::{Error, Result};
use crate::ktheory::{stab_coxeter, CohK0, StabK0};
use crate::matrix::is_unimodular;
use crate::picard::{LElt, WeightTriple};
use crate::tubular::{cover_structure_236, TubularType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Picard,
    Bundles,
    Ktheory,
    Coxzoo,
    Tubular,
    All,
}

impl Suite {
    pub fn modules() -> [Suite; 5] {
        [Suite::Picard, Suite::Bundles, Suite::Ktheory, Suite::Coxzoo, Suite::Tubular]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Picard => "picard",
            Suite::Bundles => "bundles",
            Suite::Ktheory => "ktheory",
            Suite::Coxzoo => "coxzoo",
            Suite::Tubular => "tubular",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::modules()
            .into_iter()
            .chain([Suite::All])
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::parse(s, "expected all, picard, bundles, ktheory, coxzoo or tubular"))
    }
}

/// Result of one named invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Sorted triples `2 <= a <= b <= c <= max`.
pub fn sorted_triples(max: i64) -> Vec<WeightTriple> {
    let mut out = Vec::new();
    for a in 2..=max {
        for b in a..=max {
            for c in b..=max {
                out.push(WeightTriple::new(a, b, c).expect("weights are at least 2"));
            }
        }
    }
    out
}

type Check = fn() -> Result<Option<String>>;

fn first_failure<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<Option<String>> + Sync + Send) -> Result<Option<String>> {
    let found: Vec<Result<Option<String>>> = items.par_iter().map(f).collect();
    for r in found {
        if let Some(msg) = r? {
            return Ok(Some(msg));
        }
    }
    Ok(None)
}

fn picard_order_of_omega() -> Result<Option<String>> {
    first_failure(&sorted_triples(7), |t| {
        let om = t.omega();
        let pb = t.pbar();
        let ok = om * pb == t.c() * om.delta() && (1..pb).all(|n| !(om * n).is_multiple_of_c());
        Ok((!ok).then(|| format!("{t}: omega order in L/Zc is not pbar")))
    })
}

fn picard_delta_additive() -> Result<Option<String>> {
    first_failure(&sorted_triples(6), |t| {
        let elts: Vec<LElt> = (-3..=3)
            .flat_map(|m| (0..t.p(0)).map(move |l1| LElt::normalize(*t, [l1, 1, 2], m)))
            .collect();
        for x in &elts {
            for y in &elts {
                if (*x + *y).delta() != x.delta() + y.delta() {
                    return Ok(Some(format!("{t}: delta({x} + {y})")));
                }
            }
        }
        Ok(None)
    })
}

fn picard_dim_s_periodicity() -> Result<Option<String>> {
    first_failure(&sorted_triples(6), |t| {
        for x in t.cuboid() {
            for m in -5..=5 {
                let y = x + t.c() * m;
                let s = y.dim_s() as i64;
                let p = y.dim_p() as i64 - (y - t.c()).dim_p() as i64;
                if s != p {
                    return Ok(Some(format!("{t}: dim_s({y})")));
                }
            }
        }
        Ok(None)
    })
}

fn bundles_suspension_square() -> Result<Option<String>> {
    first_failure(&sorted_triples(6), |t| {
        for x in t.cuboid() {
            let e = ExtBundleExpr::extension(x)?;
            if e.suspend(2) != e.twist(&t.c())? || e.suspend(1).det() != e.det() + t.c() {
                return Ok(Some(format!("{t}: suspension of {e}")));
            }
        }
        Ok(None)
    })
}

fn bundles_hulls() -> Result<Option<String>> {
    first_failure(&sorted_triples(6), |t| {
        for x in t.cuboid() {
            let e = ExtBundleExpr::extension(x)?;
            let inj = e.injective_hull()?;
            let proj = e.projective_cover()?;
            let ok = inj.is_hom_orthogonal()
                && proj.is_hom_orthogonal()
                && inj.total() - e.det() == e.suspend(1).det()
                && proj.total() - e.det() == e.suspend(-1).det();
            if !ok {
                return Ok(Some(format!("{t}: hulls of {e}")));
            }
        }
        Ok(None)
    })
}

fn bundles_stable_hom_pairing() -> Result<Option<String>> {
    for t in [WeightTriple::new(2, 3, 5)?, WeightTriple::new(3, 4, 5)?] {
        for x in t.cuboid() {
            for y in t.cuboid() {
                for n in -3..=3 {
                    let v = shom_dims(&ExtBundleExpr::extension(x)?, &ExtBundleExpr::auslander(y), n)?;
                    if v != Some(u32::from(n == 0 && x == y)) {
                        return Ok(Some(format!("{t}: sHom(E<{x}>, E({y})[{n}]) = {v:?}")));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn ktheory_euler_unimodular() -> Result<Option<String>> {
    first_failure(&sorted_triples(7), |t| {
        let k = CohK0::new(*t)?;
        let ok = is_unimodular(k.euler_matrix())? && k.rank() as i64 == t.coh_rank();
        Ok((!ok).then(|| format!("{t}: Euler matrix")))
    })
}

fn ktheory_mesh() -> Result<Option<String>> {
    first_failure(&sorted_triples(6), |t| {
        let k = CohK0::new(*t)?;
        for z in t.cuboid() {
            if !k.mesh_identity_holds(&z)? {
                return Ok(Some(format!("{t}: mesh identity at {z}")));
            }
        }
        Ok(None)
    })
}

fn ktheory_ranks() -> Result<Option<String>> {
    first_failure(&sorted_triples(7), |t| {
        let s = StabK0::new(*t)?;
        let ok = s.rank() as i64 == t.stab_rank() && t.coh_rank() - t.stab_rank() == t.gorenstein_number();
        Ok((!ok).then(|| format!("{t}: rank difference")))
    })
}

fn coxzoo_structural_identity() -> Result<Option<String>> {
    first_failure(&sorted_triples(7), |t| {
        let m = stab_coxeter(*t)?.charpoly()?;
        Ok((m != stable_vect_coxpol(*t)?).then(|| format!("{t}: Coxeter polynomial")))
    })
}

fn coxzoo_coxeter_numbers() -> Result<Option<String>> {
    first_failure(&sorted_triples(7), |t| {
        coxeter_number(*t)?;
        Ok(None)
    })
}

fn coxzoo_cy() -> Result<Option<String>> {
    first_failure(&sorted_triples(8), |t| {
        let expect = Rational64::from_integer(1) - t.euler_characteristic() * 2;
        Ok((cy_dimension(*t).canceled != expect).then(|| format!("{t}: CY dimension")))
    })
}

fn coxzoo_factorizations() -> Result<Option<String>> {
    first_failure(&sorted_triples(5), |t| {
        let f = factor_cyclotomic(&stable_vect_coxpol(*t)?)?;
        Ok((!f.is_complete()).then(|| format!("{t}: non-cyclotomic factor {f}")))
    })
}

fn coxzoo_happel_seidel() -> Result<Option<String>> {
    let pairs: Vec<(i64, i64)> = (2..=8).flat_map(|a| (a.max(3)..=8).map(move |b| (a, b))).collect();
    first_failure(&pairs, |&(a, b)| {
        Ok((!happel_seidel_holds(a, b)?).then(|| format!("({a},{b})")))
    })
}

fn coxzoo_orlov() -> Result<Option<String>> {
    first_failure(&sorted_triples(7), |t| {
        let o = orlov_trichotomy(*t);
        Ok((o.window.len() as i64 != o.gorenstein.abs()).then(|| format!("{t}: window size")))
    })
}

fn tubular_grid() -> Vec<Rational64> {
    (-40..=40)
        .flat_map(|n| (1..=12).map(move |d| Rational64::new(n, d)))
        .collect()
}

fn tubular_round_trip() -> Result<Option<String>> {
    let grid = tubular_grid();
    for t in TubularType::all() {
        for q in &grid {
            if t.alpha(t.alpha_inv(*q)) != *q || t.alpha_inv(t.alpha(*q)) != *q {
                return Ok(Some(format!("{t}: round trip at {q}")));
            }
        }
    }
    Ok(None)
}

fn tubular_monotone() -> Result<Option<String>> {
    let mut grid = tubular_grid();
    grid.sort();
    grid.dedup();
    for t in TubularType::all() {
        for pair in grid.windows(2) {
            if t.alpha_inv(pair[0]) >= t.alpha_inv(pair[1]) || t.alpha_inv(pair[0]) >= pair[0] {
                return Ok(Some(format!("{t}: monotonicity at {}", pair[0])));
            }
        }
    }
    Ok(None)
}

fn tubular_cover_236() -> Result<Option<String>> {
    let t = TubularType::T236;
    for r in 1..=12 {
        for d in 0..r {
            if num_integer::gcd(d, r) != 1 {
                continue;
            }
            let c = cover_structure_236(d, r)?;
            if c.kernel_slope != t.alpha_inv(Rational64::new(d, r)) {
                return Ok(Some(format!("cover bookkeeping at {d}/{r}")));
            }
        }
    }
    Ok(None)
}

fn checks(suite: Suite) -> Vec<(&'static str, Check)> {
    match suite {
        Suite::Picard => vec![
            ("omega-order-is-pbar", picard_order_of_omega as Check),
            ("delta-additive", picard_delta_additive),
            ("dim-s-is-difference-of-dim-p", picard_dim_s_periodicity),
        ],
        Suite::Bundles => vec![
            ("suspension-square-is-c-twist", bundles_suspension_square as Check),
            ("hulls-orthogonal-and-determinants", bundles_hulls),
            ("stable-hom-pairing", bundles_stable_hom_pairing),
        ],
        Suite::Ktheory => vec![
            ("euler-matrix-unimodular", ktheory_euler_unimodular as Check),
            ("mesh-identity", ktheory_mesh),
            ("rank-difference-is-gorenstein", ktheory_ranks),
        ],
        Suite::Coxzoo => vec![
            ("structural-identity-56-triples", coxzoo_structural_identity as Check),
            ("coxeter-number", coxzoo_coxeter_numbers),
            ("cy-dimension-is-1-minus-2chi", coxzoo_cy),
            ("cyclotomic-factorization", coxzoo_factorizations),
            ("happel-seidel", coxzoo_happel_seidel),
            ("orlov-window-size", coxzoo_orlov),
        ],
        Suite::Tubular => vec![
            ("alpha-round-trip", tubular_round_trip as Check),
            ("alpha-inverse-monotone", tubular_monotone),
            ("cover-236-bookkeeping", tubular_cover_236),
        ],
        Suite::All => Suite::modules().into_iter().flat_map(checks).collect(),
    }
}

fn suite_of(name: &str) -> &'static str {
    Suite::modules()
        .into_iter()
        .find(|s| checks(*s).iter().any(|(n, _)| *n == name))
        .map_or("all", |s| s.name())
}

/// Runs every invariant of the suite in a fixed order.
pub fn run_suite(suite: Suite) -> Vec<CheckOutcome> {
    checks(suite)
        .into_iter()
        .map(|(name, f)| {
            let (passed, detail) = match f() {
                Ok(None) => (true, String::new()),
                Ok(Some(msg)) => (false, msg),
                Err(e) => (false, e.to_string()),
            };
            CheckOutcome {
                suite: suite_of(name),
                name,
                passed,
                detail,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifty_six_triples() {
        assert_eq!(sorted_triples(7).len(), 56);
    }

    #[test]
    fn suite_names_parse() {
        for s in Suite::modules().into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn cheap_suites_pass() {
        for s in [Suite::Picard, Suite::Tubular, Suite::Bundles] {
            for o in run_suite(s) {
                assert!(o.passed, "{} {}: {}", o.suite, o.name, o.detail);
                assert_eq!(o.suite, s.name());
            }
        }
    }
}
