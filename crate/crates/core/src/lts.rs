//! Lie triple systems, Lie algebras, and representations as structure constants.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{Matrix, Subspace, Vector};
use crate::report::AxiomReport;
use crate::tensor::{indices, Arg, Multilinear};

/// A trilinear bracket `[e_i, e_j, e_k] = Σ_l c[i][j][k][l] e_l`.
///
/// Construction only checks the shape: candidate tables that violate the
/// axioms are representable so that [`verify_lts`] can report on them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieTripleSystem {
    bracket: Multilinear,
}

impl LieTripleSystem {
    pub fn new(bracket: Multilinear) -> Result<Self> {
        let d = bracket.out_dim();
        if bracket.dims() != [d, d, d] {
            return Err(Error::Shape(format!("bracket table of shape {:?} -> {d} is not dim^4", bracket.dims())));
        }
        Ok(LieTripleSystem { bracket })
    }

    pub fn zero(field: FieldSpec, dim: usize) -> Self {
        LieTripleSystem { bracket: Multilinear::zeros(field, vec![dim; 3], dim) }
    }

    pub fn from_fn(field: FieldSpec, dim: usize, f: impl FnMut(&[usize]) -> Vector) -> Self {
        LieTripleSystem { bracket: Multilinear::from_fn(field, vec![dim; 3], dim, f) }
    }

    pub fn field(&self) -> FieldSpec {
        self.bracket.field()
    }

    pub fn dim(&self) -> usize {
        self.bracket.out_dim()
    }

    pub fn bracket(&self) -> &Multilinear {
        &self.bracket
    }

    pub fn br(&self, x: &Vector, y: &Vector, z: &Vector) -> Vector {
        self.bracket.eval(&[x, y, z])
    }

    pub fn br_basis(&self, i: usize, j: usize, k: usize) -> Vector {
        self.bracket.value_vec(&[i, j, k])
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.is_zero()
    }

    pub fn verify(&self) -> AxiomReport {
        verify_lts(self)
    }

    /// Transports the structure along `P`: `[x,y,z]' = P⁻¹[Px,Py,Pz]`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Self> {
        let pinv = p.inverse().ok_or_else(|| Error::Singular("change of basis".into()))?;
        let mut t = self.bracket.clone();
        for k in 0..3 {
            t = t.compose_slot(k, p);
        }
        Ok(LieTripleSystem { bracket: t.compose_output(&pinv) })
    }
}

/// Checks alternation, the cyclic identity, and the derivation identity on
/// all basis tuples.
pub fn verify_lts(t: &LieTripleSystem) -> AxiomReport {
    let d = t.dim();
    let c = &t.bracket;
    let mut report = AxiomReport::default();
    report.scan("alternating", &[d, d, d], |w| {
        let (x, y, z) = (w[0], w[1], w[2]);
        if x == y {
            c.value(w).iter().all(|v| v.is_zero())
        } else {
            c.value(w).iter().zip(c.value(&[y, x, z])).all(|(a, b)| (a + b).is_zero())
        }
    });
    report.scan("cyclic", &[d, d, d], |w| {
        let (x, y, z) = (w[0], w[1], w[2]);
        let s = c.value_vec(&[x, y, z]) + c.value_vec(&[y, z, x]) + c.value_vec(&[z, x, y]);
        s.is_zero()
    });
    report.scan("derivation", &[d; 5], |w| {
        let (x1, x2, y1, y2, y3) = (w[0], w[1], w[2], w[3], w[4]);
        let inner = c.value_vec(&[y1, y2, y3]);
        let lhs = c.eval_mixed(&[Arg::Basis(x1), Arg::Basis(x2), Arg::Vector(&inner)]);
        let a = c.value_vec(&[x1, x2, y1]);
        let b = c.value_vec(&[x1, x2, y2]);
        let e = c.value_vec(&[x1, x2, y3]);
        let rhs = c.eval_mixed(&[Arg::Vector(&a), Arg::Basis(y2), Arg::Basis(y3)])
            + c.eval_mixed(&[Arg::Basis(y1), Arg::Vector(&b), Arg::Basis(y3)])
            + c.eval_mixed(&[Arg::Basis(y1), Arg::Basis(y2), Arg::Vector(&e)]);
        lhs == rhs
    });
    report
}

/// A Lie algebra by structure constants `[e_i, e_j] = Σ_l c[i][j][l] e_l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieAlgebra {
    bracket: Multilinear,
}

impl LieAlgebra {
    pub fn new(bracket: Multilinear) -> Result<Self> {
        let d = bracket.out_dim();
        if bracket.dims() != [d, d] {
            return Err(Error::Shape(format!("Lie bracket table of shape {:?} -> {d} is not dim^3", bracket.dims())));
        }
        Ok(LieAlgebra { bracket })
    }

    /// Builds the algebra from the brackets `[e_i, e_j]` for `i < j`, extended antisymmetrically.
    pub fn from_upper(field: FieldSpec, dim: usize, entries: &[(usize, usize, Vector)]) -> Self {
        let mut t = Multilinear::zeros(field, vec![dim, dim], dim);
        for (i, j, v) in entries {
            t.set_value(&[*i, *j], v);
            t.set_value(&[*j, *i], &-v.clone());
        }
        LieAlgebra { bracket: t }
    }

    pub fn field(&self) -> FieldSpec {
        self.bracket.field()
    }

    pub fn dim(&self) -> usize {
        self.bracket.out_dim()
    }

    pub fn bracket(&self) -> &Multilinear {
        &self.bracket
    }

    /// Antisymmetry and the Jacobi identity on basis tuples.
    pub fn verify(&self) -> AxiomReport {
        let d = self.dim();
        let c = &self.bracket;
        let mut report = AxiomReport::default();
        report.scan("antisymmetric", &[d, d], |w| {
            if w[0] == w[1] {
                c.value(w).iter().all(|v| v.is_zero())
            } else {
                c.value(w).iter().zip(c.value(&[w[1], w[0]])).all(|(a, b)| (a + b).is_zero())
            }
        });
        report.scan("jacobi", &[d, d, d], |w| {
            let (x, y, z) = (w[0], w[1], w[2]);
            let yz = c.value_vec(&[y, z]);
            let zx = c.value_vec(&[z, x]);
            let xy = c.value_vec(&[x, y]);
            let s = c.eval_mixed(&[Arg::Basis(x), Arg::Vector(&yz)])
                + c.eval_mixed(&[Arg::Basis(y), Arg::Vector(&zx)])
                + c.eval_mixed(&[Arg::Basis(z), Arg::Vector(&xy)]);
            s.is_zero()
        });
        report
    }

    /// `[x,y]' = P⁻¹[Px,Py]`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Self> {
        let pinv = p.inverse().ok_or_else(|| Error::Singular("change of basis".into()))?;
        let t = self.bracket.compose_slot(0, p).compose_slot(1, p).compose_output(&pinv);
        Ok(LieAlgebra { bracket: t })
    }
}

/// The Lie triple system `[x,y,z] = [[x,y],z]` of a Lie algebra.
pub fn lts_from_lie_algebra(l: &LieAlgebra) -> Result<LieTripleSystem> {
    if let Some(fail) = l.verify().first_failure() {
        return Err(Error::NotLieAlgebra {
            axiom: fail.name.to_string(),
            witness: fail.witness.clone().unwrap_or_default(),
        });
    }
    let c = &l.bracket;
    Ok(LieTripleSystem::from_fn(l.field(), l.dim(), |w| {
        let xy = c.value_vec(&[w[0], w[1]]);
        c.eval_mixed(&[Arg::Vector(&xy), Arg::Basis(w[2])])
    }))
}

/// Block-diagonal bracket on `g ⊕ h` (basis of g first).
pub fn direct_sum(g: &LieTripleSystem, h: &LieTripleSystem) -> Result<LieTripleSystem> {
    if g.field() != h.field() {
        return Err(Error::FieldMismatch(g.field(), h.field()));
    }
    let (m, n) = (g.dim(), h.dim());
    let field = g.field();
    Ok(LieTripleSystem::from_fn(field, m + n, |w| {
        if w.iter().all(|&i| i < m) {
            g.br_basis(w[0], w[1], w[2]).concat(&Vector::zeros(field, n))
        } else if w.iter().all(|&i| i >= m) {
            Vector::zeros(field, m).concat(&h.br_basis(w[0] - m, w[1] - m, w[2] - m))
        } else {
            Vector::zeros(field, m + n)
        }
    }))
}

fn check_vectors(m: &[Vector], g: &LieTripleSystem) -> Result<Subspace> {
    Subspace::span(g.field(), g.dim(), m)
}

/// `[M, g, g] ⊆ M` and `[g, g, M] ⊆ M`, for `M` spanned by the given vectors.
pub fn is_ideal(m: &[Vector], g: &LieTripleSystem) -> Result<bool> {
    let sub = check_vectors(m, g)?;
    let d = g.dim();
    for v in sub.basis() {
        for j in 0..d {
            for k in 0..d {
                let left = g.bracket.eval_mixed(&[Arg::Vector(v), Arg::Basis(j), Arg::Basis(k)]);
                let right = g.bracket.eval_mixed(&[Arg::Basis(j), Arg::Basis(k), Arg::Vector(v)]);
                if !sub.contains(&left) || !sub.contains(&right) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// An ideal with `[M, M, g] = [g, M, M] = 0`.
pub fn is_abelian_ideal(m: &[Vector], g: &LieTripleSystem) -> Result<bool> {
    if !is_ideal(m, g)? {
        return Ok(false);
    }
    let sub = check_vectors(m, g)?;
    for a in sub.basis() {
        for b in sub.basis() {
            for k in 0..g.dim() {
                let left = g.bracket.eval_mixed(&[Arg::Vector(a), Arg::Vector(b), Arg::Basis(k)]);
                let right = g.bracket.eval_mixed(&[Arg::Basis(k), Arg::Vector(a), Arg::Vector(b)]);
                if !left.is_zero() || !right.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `f[x,y,z]₁ = [fx,fy,fz]₂` on all basis triples.
pub fn is_homomorphism(f: &Matrix, g1: &LieTripleSystem, g2: &LieTripleSystem) -> bool {
    if f.rows() != g2.dim() || f.cols() != g1.dim() || f.field() != g1.field() || g1.field() != g2.field() {
        return false;
    }
    let images: Vec<Vector> = (0..g1.dim()).map(|i| f.column(i)).collect();
    indices(&[g1.dim(); 3]).all(|w| {
        let lhs = f.apply(&g1.br_basis(w[0], w[1], w[2]));
        let rhs = g2.br(&images[w[0]], &images[w[1]], &images[w[2]]);
        lhs == rhs
    })
}

pub fn is_automorphism(f: &Matrix, g: &LieTripleSystem) -> bool {
    f.is_invertible() && is_homomorphism(f, g, g)
}

/// A representation `θ: g ∧ g → gl(V)`, stored as `θ(e_i, e_j) v_a = Σ_b t[i][j][a][b] v_b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    lts: LieTripleSystem,
    theta: Multilinear,
}

impl Representation {
    /// `theta` has shape `(dim g, dim g, dim V) → dim V` and maps `(x, y, a) ↦ θ(x,y)a`.
    pub fn new(lts: LieTripleSystem, theta: Multilinear) -> Result<Self> {
        let (d, v) = (lts.dim(), theta.out_dim());
        if theta.dims() != [d, d, v] {
            return Err(Error::Shape(format!("theta of shape {:?} -> {v} for an LTS of dimension {d}", theta.dims())));
        }
        if theta.field() != lts.field() {
            return Err(Error::FieldMismatch(lts.field(), theta.field()));
        }
        Ok(Representation { lts, theta })
    }

    pub fn zero(lts: LieTripleSystem, vdim: usize) -> Self {
        let theta = Multilinear::zeros(lts.field(), vec![lts.dim(), lts.dim(), vdim], vdim);
        Representation { lts, theta }
    }

    /// `θ(x,y)a = [a,x,y]` on `V = g`.
    pub fn regular(lts: LieTripleSystem) -> Self {
        let d = lts.dim();
        let theta = Multilinear::from_fn(lts.field(), vec![d, d, d], d, |w| lts.br_basis(w[2], w[0], w[1]));
        Representation { lts, theta }
    }

    pub fn lts(&self) -> &LieTripleSystem {
        &self.lts
    }

    pub fn field(&self) -> FieldSpec {
        self.lts.field()
    }

    pub fn vdim(&self) -> usize {
        self.theta.out_dim()
    }

    pub fn theta(&self) -> &Multilinear {
        &self.theta
    }

    /// `θ(x,y)a`.
    pub fn act(&self, x: &Vector, y: &Vector, a: &Vector) -> Vector {
        self.theta.eval(&[x, y, a])
    }

    /// `D_θ(x,y)a = θ(y,x)a − θ(x,y)a`.
    pub fn d_act(&self, x: &Vector, y: &Vector, a: &Vector) -> Vector {
        self.act(y, x, a) - self.act(x, y, a)
    }

    /// Matrix of `θ(x, y)` on V.
    pub fn theta_matrix(&self, x: &Vector, y: &Vector) -> Matrix {
        let cols: Vec<Vector> =
            (0..self.vdim()).map(|a| self.theta.eval_mixed(&[Arg::Vector(x), Arg::Vector(y), Arg::Basis(a)])).collect();
        Matrix::from_columns(self.field(), self.vdim(), &cols)
    }

    /// Matrix of `D_θ(x, y)` on V.
    pub fn d_theta_matrix(&self, x: &Vector, y: &Vector) -> Matrix {
        self.theta_matrix(y, x).sub(&self.theta_matrix(x, y))
    }

    pub fn verify(&self) -> AxiomReport {
        verify_representation(self)
    }

    /// Transports along `P` on g and `Q` on V: `θ'(x,y) = Q⁻¹ θ(Px,Py) Q`.
    pub fn change_basis(&self, p: &Matrix, q: &Matrix) -> Result<Self> {
        let qinv = q.inverse().ok_or_else(|| Error::Singular("change of basis on V".into()))?;
        let lts = self.lts.change_basis(p)?;
        let theta = self.theta.compose_slot(0, p).compose_slot(1, p).compose_slot(2, q).compose_output(&qinv);
        Ok(Representation { lts, theta })
    }
}

/// The two representation identities on all basis quadruples, as operator identities on V.
pub fn verify_representation(r: &Representation) -> AxiomReport {
    let field = r.field();
    let d = r.lts.dim();
    let e: Vec<Vector> = (0..d).map(|i| Vector::basis(field, d, i)).collect();
    let th: Vec<Vec<Matrix>> = (0..d).map(|i| (0..d).map(|j| r.theta_matrix(&e[i], &e[j])).collect()).collect();
    let dt = |i: usize, j: usize| th[j][i].sub(&th[i][j]);
    let mut report = AxiomReport::default();
    report.scan("theta_composition", &[d; 4], |w| {
        let (x1, x2, x3, x4) = (w[0], w[1], w[2], w[3]);
        let b = r.lts.br_basis(x2, x3, x4);
        let lhs = th[x3][x4]
            .mul(&th[x1][x2])
            .sub(&th[x2][x4].mul(&th[x1][x3]))
            .sub(&r.theta_matrix(&e[x1], &b))
            .add(&dt(x2, x3).mul(&th[x1][x4]));
        lhs.is_zero()
    });
    report.scan("theta_derivation", &[d; 4], |w| {
        let (x1, x2, x3, x4) = (w[0], w[1], w[2], w[3]);
        let b3 = r.lts.br_basis(x1, x2, x3);
        let b4 = r.lts.br_basis(x1, x2, x4);
        let lhs = th[x3][x4]
            .mul(&dt(x1, x2))
            .sub(&dt(x1, x2).mul(&th[x3][x4]))
            .add(&r.theta_matrix(&b3, &e[x4]))
            .add(&r.theta_matrix(&e[x3], &b4));
        lhs.is_zero()
    });
    report
}
