//! The Yamaguti cochain complex `C^{2n+1}(g, V)`, its coboundary, and cohomology.
//!
//! A level-`n` cochain has `2n+1` arguments. For `n ≥ 1` it alternates in
//! arguments `2n−1, 2n` and its cyclic sum over the final three arguments vanishes.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{Matrix, Vector};
use crate::lts::Representation;
use crate::tensor::{cochain_constraint_violation, indices, Arg, Multilinear};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct YamagutiCochain {
    level: usize,
    table: Multilinear,
}

impl YamagutiCochain {
    /// Validates the arity and, for level ≥ 1, the cochain constraints.
    pub fn new(level: usize, table: Multilinear) -> Result<Self> {
        let arity = 2 * level + 1;
        let d = table.dims().first().copied().unwrap_or(0);
        if table.arity() != arity || table.dims().iter().any(|&x| x != d) {
            return Err(Error::Shape(format!(
                "level {level} needs {arity} arguments of equal dimension, got {:?}",
                table.dims()
            )));
        }
        if let Some((constraint, witness)) = cochain_constraint_violation(&table) {
            return Err(Error::CochainConstraint { constraint: constraint.to_string(), witness });
        }
        Ok(YamagutiCochain { level, table })
    }

    pub fn zero(field: FieldSpec, level: usize, g_dim: usize, v_dim: usize) -> Self {
        YamagutiCochain { level, table: Multilinear::zeros(field, vec![g_dim; 2 * level + 1], v_dim) }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn table(&self) -> &Multilinear {
        &self.table
    }

    pub fn into_table(self) -> Multilinear {
        self.table
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_zero()
    }
}

/// Trilinear forms on a `d`-dimensional space that alternate in the first two
/// arguments and have vanishing cyclic sum, as coefficient vectors of length `d³`.
fn constrained_trilinear_forms(field: FieldSpec, d: usize) -> Vec<Vector> {
    let idx = |x: usize, y: usize, z: usize| (x * d + y) * d + z;
    let mut rows = Vec::new();
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let mut r = Vector::zeros(field, d * d * d);
                if x == y {
                    r.0[idx(x, x, z)] = field.one();
                } else {
                    r.0[idx(x, y, z)] = field.one();
                    r.0[idx(y, x, z)] += &field.one();
                }
                rows.push(r);
                let mut c = Vector::zeros(field, d * d * d);
                for (a, b, e) in [(x, y, z), (y, z, x), (z, x, y)] {
                    c.0[idx(a, b, e)] += &field.one();
                }
                rows.push(c);
            }
        }
    }
    if d == 0 {
        return Vec::new();
    }
    Matrix::from_rows(field, d * d * d, &rows).nullspace()
}

/// A basis of the level-`n` cochains with values in the representation space.
///
/// The constraints only couple the final three arguments, so the constraint
/// matrix is block diagonal with one identical block per prefix and output
/// coordinate; the nullspace is assembled from the nullspace of that block.
/// Ordering: prefix tuple, then block nullspace vector, then output coordinate.
pub fn cochain_space_basis(level: usize, rep: &Representation) -> Vec<YamagutiCochain> {
    basis_for(rep.field(), level, rep.lts().dim(), rep.vdim())
}

pub(crate) fn basis_for(field: FieldSpec, level: usize, d: usize, v: usize) -> Vec<YamagutiCochain> {
    let arity = 2 * level + 1;
    let mut res = Vec::new();
    if level == 0 {
        for i in 0..d {
            for l in 0..v {
                let mut t = Multilinear::zeros(field, vec![d], v);
                t.set(&[i], l, field.one());
                res.push(YamagutiCochain { level, table: t });
            }
        }
        return res;
    }
    let forms = constrained_trilinear_forms(field, d);
    for pre in indices(&vec![d; arity - 3]) {
        for form in &forms {
            for l in 0..v {
                let mut t = Multilinear::zeros(field, vec![d; arity], v);
                for (k, c) in form.support() {
                    let mut idx = pre.clone();
                    idx.extend([k / (d * d), (k / d) % d, k % d]);
                    t.set(&idx, l, c.clone());
                }
                res.push(YamagutiCochain { level, table: t });
            }
        }
    }
    res
}

/// The Yamaguti coboundary `δ: C^{2n−1} → C^{2n+1}`, where the input has level `n − 1`.
pub fn coboundary(f: &YamagutiCochain, rep: &Representation) -> Result<YamagutiCochain> {
    let d = rep.lts().dim();
    let v = rep.vdim();
    if f.table.field() != rep.field() {
        return Err(Error::FieldMismatch(rep.field(), f.table.field()));
    }
    if f.table.out_dim() != v || f.table.dims().iter().any(|&x| x != d) {
        return Err(Error::Shape("cochain does not match the representation".into()));
    }
    if let Some((constraint, witness)) = cochain_constraint_violation(&f.table) {
        return Err(Error::CochainConstraint { constraint: constraint.to_string(), witness });
    }
    let n = f.level + 1;
    let theta = rep.theta();
    let bracket = rep.lts().bracket();
    let field = rep.field();
    let sign = |e: usize| if e.is_multiple_of(2) { field.one() } else { -field.one() };
    let out = Multilinear::from_fn(field, vec![d; 2 * n + 1], v, |x| {
        let fx = f.table.value_vec(&x[..2 * n - 1]);
        let mut total = theta.eval_mixed(&[Arg::Basis(x[2 * n - 1]), Arg::Basis(x[2 * n]), Arg::Vector(&fx)]);
        let mut args: Vec<usize> = x[..2 * n - 2].to_vec();
        args.push(x[2 * n - 1]);
        let fy = f.table.value_vec(&args);
        total -= &theta.eval_mixed(&[Arg::Basis(x[2 * n - 2]), Arg::Basis(x[2 * n]), Arg::Vector(&fy)]);
        for i in 1..=n {
            let (a, b) = (x[2 * i - 2], x[2 * i - 1]);
            let rest: Vec<usize> = x[..2 * i - 2].iter().chain(&x[2 * i..]).copied().collect();
            let fr = f.table.value_vec(&rest);
            let dterm = theta.eval_mixed(&[Arg::Basis(b), Arg::Basis(a), Arg::Vector(&fr)])
                - theta.eval_mixed(&[Arg::Basis(a), Arg::Basis(b), Arg::Vector(&fr)]);
            total.axpy(&sign(i + n), &dterm);
            for j in (2 * i + 1)..=(2 * n + 1) {
                let br = bracket.value_vec(&[a, b, x[j - 1]]);
                let slot = j - 1 - 2;
                let mut margs: Vec<Arg> = rest.iter().map(|&r| Arg::Basis(r)).collect();
                margs[slot] = Arg::Vector(&br);
                total.axpy(&sign(i + n + 1), &f.table.eval_mixed(&margs));
            }
        }
        total
    });
    if let Some((constraint, witness)) = cochain_constraint_violation(&out) {
        return Err(Error::Inconsistent(format!(
            "coboundary output violates the {constraint} constraint at {witness:?}"
        )));
    }
    Ok(YamagutiCochain { level: n, table: out })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    /// `H^{2n−1}` is reported, computed from cochains of level `n − 1`.
    pub n: usize,
    pub dim_c: usize,
    pub dim_z: usize,
    pub dim_b: usize,
    pub dim_h: usize,
    pub z_basis: Vec<YamagutiCochain>,
    pub b_basis: Vec<YamagutiCochain>,
}

fn combine(
    field: FieldSpec,
    basis: &[YamagutiCochain],
    coeffs: &Vector,
    level: usize,
    d: usize,
    v: usize,
) -> YamagutiCochain {
    let mut t = Multilinear::zeros(field, vec![d; 2 * level + 1], v);
    for (i, c) in coeffs.support() {
        t = t.add(&basis[i].table.scale(c));
    }
    YamagutiCochain { level, table: t }
}

fn image_matrix(basis: &[YamagutiCochain], rep: &Representation) -> Result<(Matrix, Vec<YamagutiCochain>)> {
    let images = basis.iter().map(|b| coboundary(b, rep)).collect::<Result<Vec<_>>>()?;
    let rows = images.first().map_or(0, |c| c.table.coefficients().len());
    let cols: Vec<Vector> = images.iter().map(|c| c.table.as_vector()).collect();
    Ok((Matrix::from_columns(rep.field(), rows, &cols), images))
}

/// `Z^{2n−1}`, `B^{2n−1}` and `H^{2n−1}` for `n ≥ 1`; `B¹ = 0`.
pub fn cohomology(n: usize, rep: &Representation) -> Result<CohomologyReport> {
    if n == 0 {
        return Err(Error::Shape("cohomology degree index must be at least 1".into()));
    }
    let field = rep.field();
    let (d, v) = (rep.lts().dim(), rep.vdim());
    let c_basis = cochain_space_basis(n - 1, rep);
    let dim_c = c_basis.len();
    let (z_basis, dim_z) = if c_basis.is_empty() {
        (Vec::new(), 0)
    } else {
        let (m, _) = image_matrix(&c_basis, rep)?;
        let ns = m.nullspace();
        let z: Vec<YamagutiCochain> = ns.iter().map(|c| combine(field, &c_basis, c, n - 1, d, v)).collect();
        let len = z.len();
        (z, len)
    };
    let (b_basis, dim_b) = if n == 1 {
        (Vec::new(), 0)
    } else {
        let prev = cochain_space_basis(n - 2, rep);
        if prev.is_empty() {
            (Vec::new(), 0)
        } else {
            let (m, images) = image_matrix(&prev, rep)?;
            let r = m.rref();
            let b: Vec<YamagutiCochain> = r.pivots.iter().map(|&p| images[p].clone()).collect();
            for cochain in &b {
                if !coboundary(cochain, rep)?.is_zero() {
                    return Err(Error::Inconsistent("a coboundary is not a cocycle".into()));
                }
            }
            (b, r.rank)
        }
    };
    if dim_b > dim_z {
        return Err(Error::Inconsistent("more coboundaries than cocycles".into()));
    }
    Ok(CohomologyReport { n, dim_c, dim_z, dim_b, dim_h: dim_z - dim_b, z_basis, b_basis })
}

/// Whether a cochain of level `≥ 1` lies in the image of `δ`; returns a preimage if so.
pub fn coboundary_preimage(f: &YamagutiCochain, rep: &Representation) -> Result<Option<YamagutiCochain>> {
    if f.level == 0 {
        return Ok(if f.is_zero() { Some(f.clone()) } else { None });
    }
    let prev = cochain_space_basis(f.level - 1, rep);
    if prev.is_empty() {
        return Ok(if f.is_zero() {
            Some(YamagutiCochain::zero(rep.field(), f.level - 1, rep.lts().dim(), rep.vdim()))
        } else {
            None
        });
    }
    let (m, _) = image_matrix(&prev, rep)?;
    Ok(m.solve(&f.table.as_vector())?
        .map(|c| combine(rep.field(), &prev, &c, f.level - 1, rep.lts().dim(), rep.vdim())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lts::{lts_from_lie_algebra, LieTripleSystem};
    use crate::samples;

    fn abelian2() -> Representation {
        Representation::zero(LieTripleSystem::zero(FieldSpec::Rationals, 2), 1)
    }

    #[test]
    fn basis_sizes() {
        let r = abelian2();
        assert_eq!(cochain_space_basis(0, &r).len(), 2);
        assert_eq!(cochain_space_basis(1, &r).len(), 2);
        let one = Representation::zero(LieTripleSystem::zero(FieldSpec::Rationals, 1), 3);
        assert_eq!(cochain_space_basis(1, &one).len(), 0);
        for b in cochain_space_basis(2, &r) {
            assert!(cochain_constraint_violation(b.table()).is_none());
        }
    }

    #[test]
    fn level_one_basis_spans_e1e2_coefficients() {
        let r = abelian2();
        let basis = cochain_space_basis(1, &r);
        let mut free = Vec::new();
        for b in &basis {
            free.push((b.table.value(&[0, 1, 0])[0].clone(), b.table.value(&[0, 1, 1])[0].clone()));
        }
        let m =
            Matrix::new(FieldSpec::Rationals, 2, 2, free.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect())
                .unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rejects_unconstrained_input() {
        let q = FieldSpec::Rationals;
        let mut t = Multilinear::zeros(q, vec![2; 3], 1);
        t.set(&[0, 0, 1], 0, q.one());
        let err = YamagutiCochain::new(1, t).unwrap_err();
        assert!(matches!(err, Error::CochainConstraint { ref witness, .. } if witness == &vec![0, 0, 1]));
    }

    #[test]
    fn level_one_specialization() {
        let q = FieldSpec::Rationals;
        let g = lts_from_lie_algebra(&samples::sl2(q)).unwrap();
        let rep = Representation::regular(g.clone());
        let f = YamagutiCochain::new(
            0,
            Multilinear::from_fn(q, vec![3], 3, |w| Vector::from_i64(q, &[(w[0] as i64) + 1, 2 - w[0] as i64, 1])),
        )
        .unwrap();
        let df = coboundary(&f, &rep).unwrap();
        let e = |i| Vector::basis(q, 3, i);
        let fv = |x: &Vector| f.table.eval(&[x]);
        for w in indices(&[3, 3, 3]) {
            let (x1, x2, x3) = (e(w[0]), e(w[1]), e(w[2]));
            let expect = rep.act(&x2, &x3, &fv(&x1)) - rep.act(&x1, &x3, &fv(&x2)) + rep.d_act(&x1, &x2, &fv(&x3))
                - fv(&g.br(&x1, &x2, &x3));
            assert_eq!(df.table.value_vec(&w), expect);
        }
        assert!(coboundary(&df, &rep).unwrap().is_zero());
    }

    #[test]
    fn abelian_cohomology() {
        let r = abelian2();
        let h1 = cohomology(1, &r).unwrap();
        assert_eq!((h1.dim_z, h1.dim_b, h1.dim_h), (2, 0, 2));
        let h3 = cohomology(2, &r).unwrap();
        assert_eq!((h3.dim_c, h3.dim_z, h3.dim_b, h3.dim_h), (2, 2, 0, 2));
        let one = Representation::zero(LieTripleSystem::zero(FieldSpec::Rationals, 1), 1);
        assert_eq!(cohomology(2, &one).unwrap().dim_h, 0);
    }

    #[test]
    fn zero_and_trivial_coboundaries() {
        let r = abelian2();
        for level in 0..2 {
            for b in cochain_space_basis(level, &r) {
                assert!(coboundary(&b, &r).unwrap().is_zero());
            }
        }
        let q = FieldSpec::Rationals;
        let g = lts_from_lie_algebra(&samples::sl2(q)).unwrap();
        let rep = Representation::regular(g);
        assert!(coboundary(&YamagutiCochain::zero(q, 1, 3, 3), &rep).unwrap().is_zero());
    }
}
