//! Grothendieck groups of `coh X` and of the stable category.
//!
//! The coherent side uses the basis `[O(x)]`, `0 <= x <= c`, ordered
//! lexicographically by the normal-form key `(m, l1, l2, l3)`. In that order the
//! Euler matrix is upper unitriangular. The stable side uses the basis of
//! classes `[E<x>]` of the tilting cuboid, ordered lexicographically in
//! `(l1, l2, l3)`.

use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

use crate::bundles::{shom_dims, ExtBundleExpr};
use crate::error::{Error, Result};
use crate::matrix::{is_unimodular, IntMatrix};
use crate::picard::{ext_dim, hom_dim, LElt, WeightTriple};

/// Coordinates over the line-bundle basis of `K0(coh X)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct K0CohClass {
    #[serde(skip)]
    weights: WeightTriple,
    coords: Vec<i64>,
}

/// Coordinates over the cuboid basis of `K0(svect X)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct K0StabClass {
    #[serde(skip)]
    weights: WeightTriple,
    coords: Vec<i64>,
}

macro_rules! class_ops {
    ($t:ident) => {
        impl $t {
            pub fn weights(&self) -> WeightTriple {
                self.weights
            }

            pub fn coords(&self) -> &[i64] {
                &self.coords
            }

            pub fn is_zero(&self) -> bool {
                self.coords.iter().all(|&c| c == 0)
            }

            pub fn add(&self, other: &$t) -> $t {
                $t {
                    weights: self.weights,
                    coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
                }
            }

            pub fn sub(&self, other: &$t) -> $t {
                self.add(&other.scale(-1))
            }

            pub fn scale(&self, k: i64) -> $t {
                $t {
                    weights: self.weights,
                    coords: self.coords.iter().map(|a| a * k).collect(),
                }
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{:?}", self.coords)
            }
        }
    };
}

class_ops!(K0CohClass);
class_ops!(K0StabClass);

/// A slope `deg / rank`, infinite on torsion classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slope {
    Finite(Rational64),
    Infinite,
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(q) => write!(f, "{q}"),
            Slope::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearForms {
    pub rank: i64,
    pub degree: i64,
    pub det: LElt,
    pub slope: Slope,
}

/// Basis `O(x)`, `0 <= x <= c`, in the documented order.
pub fn coh_basis(w: WeightTriple) -> Vec<LElt> {
    let mut out = vec![w.zero()];
    for i in (0..3).rev() {
        for j in 1..w.p(i) {
            out.push(w.x(i) * j);
        }
    }
    out.push(w.c());
    out
}

/// `<[O(x)], [O(y)]> = dim S_(y-x) - dim S_(x+omega-y)`.
pub fn line_bundle_euler(x: &LElt, y: &LElt) -> Result<i64> {
    Ok(hom_dim(x, y)? as i64 - ext_dim(x, y)? as i64)
}

pub fn coh_euler_matrix(w: WeightTriple) -> Result<IntMatrix> {
    let basis = coh_basis(w);
    let n = basis.len();
    let mut m = IntMatrix::zeros(n, n);
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            m.set(i, j, line_bundle_euler(x, y)?);
        }
    }
    if !is_unimodular(&m)? {
        return Err(Error::Internal(format!("Euler matrix of {w} is not unimodular")));
    }
    Ok(m)
}

/// Euler form and class computations on `K0(coh X)`.
#[derive(Debug, Clone)]
pub struct CohK0 {
    weights: WeightTriple,
    basis: Vec<LElt>,
    euler: IntMatrix,
    euler_inv: IntMatrix,
}

impl CohK0 {
    pub fn new(w: WeightTriple) -> Result<Self> {
        let euler = coh_euler_matrix(w)?;
        let euler_inv = euler.inverse_unimodular()?;
        Ok(CohK0 {
            weights: w,
            basis: coh_basis(w),
            euler,
            euler_inv,
        })
    }

    pub fn weights(&self) -> WeightTriple {
        self.weights
    }

    pub fn basis(&self) -> &[LElt] {
        &self.basis
    }

    pub fn euler_matrix(&self) -> &IntMatrix {
        &self.euler
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    fn check(&self, z: &LElt) -> Result<()> {
        if z.weights() == self.weights {
            Ok(())
        } else {
            Err(Error::MixedWeights(self.weights, z.weights()))
        }
    }

    fn wrap(&self, coords: Vec<i64>) -> K0CohClass {
        K0CohClass {
            weights: self.weights,
            coords,
        }
    }

    pub fn basis_vector(&self, k: usize) -> K0CohClass {
        let mut v = vec![0; self.rank()];
        v[k] = 1;
        self.wrap(v)
    }

    /// `[O(z)]`, solved from its pairings with the basis.
    pub fn line_bundle(&self, z: &LElt) -> Result<K0CohClass> {
        self.check(z)?;
        let pairing: Vec<i64> = self
            .basis
            .iter()
            .map(|b| line_bundle_euler(b, z))
            .collect::<Result<_>>()?;
        let coords = self.euler_inv.mul_vec(&pairing)?;
        let class = self.wrap(coords);
        if self.euler.mul_vec(class.coords())? != pairing {
            return Err(Error::Internal(format!("class of O({z}) does not solve its pairing")));
        }
        Ok(class)
    }

    /// Simple sheaf at the exceptional point `x_i`: `[O(z)] - [O(z - x_i)]`.
    pub fn simple_exceptional(&self, i: usize, z: &LElt) -> Result<K0CohClass> {
        let w = self.weights;
        Ok(self.line_bundle(z)?.sub(&self.line_bundle(&(*z - w.x(i)))?))
    }

    /// Simple sheaf at an ordinary point: `[O(z)] - [O(z - c)]`.
    pub fn simple_ordinary(&self, z: &LElt) -> Result<K0CohClass> {
        let w = self.weights;
        Ok(self.line_bundle(z)?.sub(&self.line_bundle(&(*z - w.c()))?))
    }

    /// Class of the vector bundle written by the expression after folding
    /// its shift: `[O(b + omega)] + [O(b + x)]`.
    pub fn ext_bundle(&self, e: &ExtBundleExpr) -> Result<K0CohClass> {
        let e = e.normalized();
        let w = self.weights;
        Ok(self
            .line_bundle(&(e.base() + w.omega()))?
            .add(&self.line_bundle(&(e.base() + e.interior()))?))
    }

    pub fn euler_form(&self, u: &K0CohClass, v: &K0CohClass) -> Result<i64> {
        self.euler.bilinear(u.coords(), v.coords())
    }

    pub fn linear_forms(&self, v: &K0CohClass) -> Result<LinearForms> {
        let w = self.weights;
        let mut rank = 0;
        let mut degree = 0;
        let mut det = w.zero();
        for (b, &k) in self.basis.iter().zip(v.coords()) {
            rank += k;
            degree += k * b.delta();
            det = det + *b * k;
        }
        let slope = if rank != 0 {
            Slope::Finite(Rational64::new(degree, rank))
        } else if degree != 0 {
            Slope::Infinite
        } else {
            return Err(Error::Precondition(format!("slope of the class {v} with rank and degree 0")));
        };
        Ok(LinearForms {
            rank,
            degree,
            det,
            slope,
        })
    }

    /// Matrix of the twist by `omega`; column `k` is `[O(b_k + omega)]`.
    pub fn omega_shift_matrix(&self) -> Result<IntMatrix> {
        let w = self.weights;
        let cols: Vec<Vec<i64>> = self
            .basis
            .iter()
            .map(|b| Ok(self.line_bundle(&(*b + w.omega()))?.coords))
            .collect::<Result<_>>()?;
        let n = self.rank();
        Ok(IntMatrix::from_fn(n, n, |i, j| cols[j][i]))
    }

    /// `sum_{j < pbar} <Phi_omega^j u, v>`.
    pub fn averaged_euler_form(&self, u: &K0CohClass, v: &K0CohClass) -> Result<i64> {
        let phi = self.omega_shift_matrix()?;
        let mut cur = u.coords().to_vec();
        let mut total = 0i64;
        for _ in 0..self.weights.pbar() {
            total += self.euler.bilinear(&cur, v.coords())?;
            cur = phi.mul_vec(&cur)?;
        }
        Ok(total)
    }

    /// `[O(z + omega)] = [O(z)] - sum_i [S_i] + [S_x]` for simples at twist `z`.
    pub fn mesh_identity_holds(&self, z: &LElt) -> Result<bool> {
        let w = self.weights;
        let lhs = self.line_bundle(&(*z + w.omega()))?;
        let mut rhs = self.line_bundle(z)?.add(&self.simple_ordinary(z)?);
        for i in 0..3 {
            rhs = rhs.sub(&self.simple_exceptional(i, z)?);
        }
        Ok(lhs == rhs)
    }
}

/// Cartan matrix of the incidence algebra of the cuboid poset.
pub fn stab_cartan(w: WeightTriple) -> IntMatrix {
    let cub = w.cuboid();
    let n = cub.len();
    IntMatrix::from_fn(n, n, |i, j| {
        let (u, v) = (cub[i].l(), cub[j].l());
        i64::from((0..3).all(|k| u[k] <= v[k]))
    })
}

/// `-C^{-T} C`.
pub fn stab_coxeter(w: WeightTriple) -> Result<IntMatrix> {
    let c = stab_cartan(w);
    let cinv_t = c.inverse_unimodular()?.transpose();
    Ok(cinv_t.mul(&c)?.neg())
}

/// Euler form, Auslander-Reiten translation and class computations on the
/// stable Grothendieck group.
#[derive(Debug, Clone)]
pub struct StabK0 {
    weights: WeightTriple,
    cuboid: Vec<LElt>,
    cartan: IntMatrix,
    cartan_inv: IntMatrix,
    tau: IntMatrix,
}

impl StabK0 {
    pub fn new(w: WeightTriple) -> Result<Self> {
        let cartan = stab_cartan(w);
        let cartan_inv = cartan.inverse_unimodular()?;
        let tau = cartan_inv.mul(&cartan.transpose())?.neg();
        Ok(StabK0 {
            weights: w,
            cuboid: w.cuboid(),
            cartan,
            cartan_inv,
            tau,
        })
    }

    pub fn weights(&self) -> WeightTriple {
        self.weights
    }

    pub fn rank(&self) -> usize {
        self.cuboid.len()
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn cartan_inverse(&self) -> &IntMatrix {
        &self.cartan_inv
    }

    /// Matrix of `tau` on coordinate columns, `-C^{-1} C^T`; conjugate to
    /// [`stab_coxeter`].
    pub fn tau_matrix(&self) -> &IntMatrix {
        &self.tau
    }

    fn wrap(&self, coords: Vec<i64>) -> K0StabClass {
        K0StabClass {
            weights: self.weights,
            coords,
        }
    }

    fn index(&self, x: &LElt) -> Result<usize> {
        self.weights
            .cuboid_index(x)
            .ok_or_else(|| Error::NotInCuboid(x.to_string()))
    }

    /// `[E<x>]`.
    pub fn projective(&self, x: &LElt) -> Result<K0StabClass> {
        let mut v = vec![0; self.rank()];
        v[self.index(x)?] = 1;
        Ok(self.wrap(v))
    }

    /// `[E(y)]`, the basis dual to the projectives under the Euler form.
    pub fn simple(&self, y: &LElt) -> Result<K0StabClass> {
        let k = self.index(y)?;
        Ok(self.wrap(self.cartan_inv.column(k)))
    }

    pub fn euler_form(&self, u: &K0StabClass, v: &K0StabClass) -> Result<i64> {
        self.cartan.bilinear(u.coords(), v.coords())
    }

    pub fn tau_power(&self, v: &K0StabClass, k: i64) -> Result<K0StabClass> {
        let period = self.weights.pbar();
        let mut cur = v.coords().to_vec();
        for _ in 0..k.rem_euclid(period) {
            cur = self.tau.mul_vec(&cur)?;
        }
        Ok(self.wrap(cur))
    }

    /// Writes `b = k*omega + sum a_i x_i + m*c` with weight-two generators
    /// `x_i` (only when the first weight is 2), returning `(k, sum a_i)`.
    fn twist_coordinates(&self, b: &LElt) -> Option<(i64, i64)> {
        let w = self.weights;
        let twos: Vec<usize> = if w.p(0) == 2 {
            w.weight_two_generators()
        } else {
            Vec::new()
        };
        for k in 0..w.pbar() {
            for mask in 0..(1u32 << twos.len()) {
                let mut r = *b - w.omega() * k;
                for (bit, &i) in twos.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        r = r - w.x(i);
                    }
                }
                if r.is_multiple_of_c() {
                    return Some((k, i64::from(mask.count_ones())));
                }
            }
        }
        None
    }

    /// `[E]` from the twist decomposition of some rewrite of `E`.
    ///
    /// `E<x>(k*omega + m*c)[s]` has class `(-1)^s tau^k [E<x>]` and
    /// `E(y + k*omega + m*c)[s]` has class `(-1)^s tau^k [E(y)]`. For weights
    /// `(2,b,c)` a twist by a weight-two generator acts as the shift. All
    /// applicable rewrites must agree.
    pub fn class_of(&self, e: &ExtBundleExpr) -> Result<K0StabClass> {
        let w = self.weights;
        let mut found: Option<K0StabClass> = None;
        for (f, j) in e.shifted_forms() {
            let mut candidates = Vec::new();
            if let Some((k, s)) = self.twist_coordinates(&f.base()) {
                candidates.push((self.projective(&f.interior())?, k, s));
            }
            if f.is_auslander_form() {
                let y = LElt::normalize(w, f.base().l(), 0);
                if y.in_cuboid() {
                    candidates.push((self.simple(&y)?, 0, 0));
                }
                for z in w.cuboid() {
                    if let Some((k, s)) = self.twist_coordinates(&(f.base() - z)) {
                        candidates.push((self.simple(&z)?, k, s));
                    }
                }
            }
            for (v, k, s) in candidates {
                let sign = if (j + s).rem_euclid(2) == 0 { 1 } else { -1 };
                let class = self.tau_power(&v, k)?.scale(sign);
                match &found {
                    None => found = Some(class),
                    Some(prev) if *prev == class => {}
                    Some(prev) => {
                        return Err(Error::Internal(format!(
                            "class rewrites of {e} disagree: {prev} vs {class}"
                        )))
                    }
                }
            }
        }
        found.ok_or_else(|| Error::NotReducible(e.to_string()))
    }

    /// `[E]` from `<[E], [E(y)]> = sum_n (-1)^n dim sHom(E, E(y)[n])`, the
    /// coefficient of `[E<y>]`.
    pub fn class_by_pairing(&self, e: &ExtBundleExpr) -> Result<K0StabClass> {
        let f = e.normalized();
        let inj = f.injective_hull()?;
        let proj = f.tau().projective_cover()?;
        let mut coords = Vec::with_capacity(self.rank());
        for y in &self.cuboid {
            let reach = inj
                .summands
                .iter()
                .chain(proj.summands.iter())
                .map(|z| (z.m() - y.m()).abs())
                .max()
                .unwrap_or(0);
            let bound = 2 * reach + 3;
            let target = ExtBundleExpr::auslander(*y);
            let mut total = 0i64;
            for n in -bound..=bound {
                let d = shom_dims(&f, &target, n)?.ok_or_else(|| {
                    Error::Internal(format!("no Hom formula for {f} -> {target}[{n}]"))
                })?;
                total += if n.rem_euclid(2) == 0 { 1 } else { -1 } * i64::from(d);
            }
            coords.push(total);
        }
        Ok(self.wrap(coords))
    }
}
