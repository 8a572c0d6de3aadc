//! Standard small examples and seeded random generators.

use rand::Rng;

use crate::deformation::GradedCochain;
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{Matrix, Vector};
use crate::lts::{lts_from_lie_algebra, LieAlgebra, LieTripleSystem};
use crate::nonabelian::NonAbelianCocycle;
use crate::tensor::Multilinear;
use crate::yamaguti::basis_for;

/// `sl₂` on the basis `(h, e, f)`: `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
pub fn sl2(field: FieldSpec) -> LieAlgebra {
    LieAlgebra::from_upper(
        field,
        3,
        &[
            (0, 1, Vector::from_i64(field, &[0, 2, 0])),
            (0, 2, Vector::from_i64(field, &[0, 0, -2])),
            (1, 2, Vector::from_i64(field, &[1, 0, 0])),
        ],
    )
}

/// Heisenberg algebra `[e₁, e₂] = e₃`.
pub fn heisenberg(field: FieldSpec) -> LieAlgebra {
    LieAlgebra::from_upper(field, 3, &[(0, 1, Vector::from_i64(field, &[0, 0, 1]))])
}

pub fn abelian_lie(field: FieldSpec, dim: usize) -> LieAlgebra {
    LieAlgebra::from_upper(field, dim, &[])
}

/// The two-dimensional non-abelian Lie algebra `[e₁, e₂] = e₂`.
pub fn affine_line(field: FieldSpec) -> LieAlgebra {
    LieAlgebra::from_upper(field, 2, &[(0, 1, Vector::from_i64(field, &[0, 1]))])
}

pub fn sl2_lts(field: FieldSpec) -> LieTripleSystem {
    lts_from_lie_algebra(&sl2(field)).expect("sl2 is a Lie algebra")
}

/// The LTS of [`affine_line`]: `[e₁,e₂,e₁] = −e₂`, `[e₂,e₁,e₁] = e₂`.
pub fn affine_line_lts(field: FieldSpec) -> LieTripleSystem {
    lts_from_lie_algebra(&affine_line(field)).expect("affine line algebra is a Lie algebra")
}

/// A uniformly random element of a finite field, or a small integer over ℚ.
pub fn random_scalar<R: Rng + ?Sized>(field: FieldSpec, rng: &mut R) -> Scalar {
    match field.order() {
        Some(p) => field.from_i64(rng.gen_range(0..p) as i64),
        None => field.from_i64(rng.gen_range(-3..=3)),
    }
}

pub fn random_nonzero_scalar<R: Rng + ?Sized>(field: FieldSpec, rng: &mut R) -> Scalar {
    loop {
        let s = random_scalar(field, rng);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn random_matrix<R: Rng + ?Sized>(field: FieldSpec, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    let data = (0..rows * cols).map(|_| random_scalar(field, rng)).collect();
    Matrix::new(field, rows, cols, data).expect("shape is consistent")
}

pub fn random_invertible<R: Rng + ?Sized>(field: FieldSpec, n: usize, rng: &mut R) -> Matrix {
    loop {
        let m = random_matrix(field, n, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

pub fn random_vector<R: Rng + ?Sized>(field: FieldSpec, n: usize, rng: &mut R) -> Vector {
    Vector((0..n).map(|_| random_scalar(field, rng)).collect())
}

/// `g` abelian of dimension 2, `h` abelian of dimension 1, `θ = ρ = 0`, and
/// `ω(e₁,e₂,e₁) = f₁` extended alternately and cyclically, all other values zero.
pub fn abelian_omega_example(field: FieldSpec) -> NonAbelianCocycle {
    let mut omega = Multilinear::zeros(field, vec![2, 2, 2], 1);
    omega.set(&[0, 1, 0], 0, field.one());
    omega.set(&[1, 0, 0], 0, -field.one());
    let g = LieTripleSystem::zero(field, 2);
    let h = LieTripleSystem::zero(field, 1);
    let zero = NonAbelianCocycle::zero(g, h);
    zero.with_parts(omega, zero.theta().clone(), zero.rho().clone()).expect("shapes match")
}

/// A random trilinear map `g³ → h` alternating in its first two arguments with vanishing cyclic sum.
pub fn random_constrained_omega<R: Rng + ?Sized>(field: FieldSpec, m: usize, n: usize, rng: &mut R) -> Multilinear {
    let mut t = Multilinear::zeros(field, vec![m, m, m], n);
    for b in basis_for(field, 1, m, n) {
        t = t.add(&b.table().scale(&random_scalar(field, rng)));
    }
    t
}

/// A valid cocycle: random `ω` when `g` and `h` are both abelian (with `θ = ρ = 0`),
/// otherwise the zero triple, then moved by a random `φ: g → h`.
pub fn random_valid_cocycle<R: Rng + ?Sized>(
    g: &LieTripleSystem,
    h: &LieTripleSystem,
    rng: &mut R,
) -> NonAbelianCocycle {
    let field = g.field();
    let zero = NonAbelianCocycle::zero(g.clone(), h.clone());
    let base = if g.is_abelian() && h.is_abelian() {
        let omega = random_constrained_omega(field, g.dim(), h.dim(), rng);
        zero.with_parts(omega, zero.theta().clone(), zero.rho().clone()).expect("shapes match")
    } else {
        zero
    };
    let phi = random_matrix(field, h.dim(), g.dim(), rng);
    base.shifted_by(&phi).expect("φ has the right shape")
}

/// Adds a random nonzero scalar to one random coefficient of `ω`, `θ` or `ρ`.
/// The result usually, but not always, fails verification.
pub fn corrupt_cocycle<R: Rng + ?Sized>(c: &NonAbelianCocycle, rng: &mut R) -> NonAbelianCocycle {
    let field = c.field();
    let mut parts = [c.omega().clone(), c.theta().clone(), c.rho().clone()];
    let nonempty: Vec<usize> = (0..3).filter(|&k| !parts[k].coefficients().is_empty()).collect();
    if nonempty.is_empty() {
        return c.clone();
    }
    let k = nonempty[rng.gen_range(0..nonempty.len())];
    let t = &parts[k];
    let mut data = t.coefficients().to_vec();
    let pos = rng.gen_range(0..data.len());
    data[pos] += &random_nonzero_scalar(field, rng);
    parts[k] = Multilinear::from_coefficients(field, t.dims().to_vec(), t.out_dim(), data).expect("same shape");
    let [omega, theta, rho] = parts;
    c.with_parts(omega, theta, rho).expect("shapes match")
}

/// A random element of the degree-`degree` graded cochains on a `d`-dimensional space.
pub fn random_graded_cochain<R: Rng + ?Sized>(field: FieldSpec, degree: usize, d: usize, rng: &mut R) -> GradedCochain {
    let mut t = Multilinear::zeros(field, vec![d; 2 * degree + 1], d);
    for b in basis_for(field, degree, d, d) {
        t = t.add(&b.table().scale(&random_scalar(field, rng)));
    }
    GradedCochain::new(degree, t).expect("combination of basis cochains")
}
