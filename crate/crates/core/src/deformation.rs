//! The graded Lie algebra of cochains `C*(g, g)`, its differential `d_π = [π, ·]`,
//! Maurer-Cartan elements, the subalgebra `C_>(g ⊕ h, h)`, and gauge action.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::Matrix;
use crate::lts::{direct_sum, LieTripleSystem};
use crate::nonabelian::{extension_table, NonAbelianCocycle};
use crate::tensor::{cochain_constraint_violation, indices, Arg, Multilinear};
use crate::yamaguti::basis_for;

/// A degree-`n` cochain: a map `V^{2n+1} → V` whose final three arguments
/// alternate in the first two and have vanishing cyclic sum. Degree 0 is an
/// unconstrained endomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedCochain {
    degree: usize,
    table: Multilinear,
}

impl GradedCochain {
    pub fn new(degree: usize, table: Multilinear) -> Result<Self> {
        let d = table.out_dim();
        if table.arity() != 2 * degree + 1 || table.dims().iter().any(|&x| x != d) {
            return Err(Error::Shape(format!(
                "degree {degree} needs {} arguments of dimension {d}, got {:?}",
                2 * degree + 1,
                table.dims()
            )));
        }
        if let Some((constraint, witness)) = cochain_constraint_violation(&table) {
            return Err(Error::CochainConstraint { constraint: constraint.to_string(), witness });
        }
        Ok(GradedCochain { degree, table })
    }

    pub fn zero(field: FieldSpec, degree: usize, dim: usize) -> Self {
        GradedCochain { degree, table: Multilinear::zeros(field, vec![dim; 2 * degree + 1], dim) }
    }

    /// The degree-0 cochain of a linear map.
    pub fn from_matrix(f: &Matrix) -> Result<Self> {
        if !f.is_square() {
            return Err(Error::Shape("degree-0 cochains are endomorphisms".into()));
        }
        let d = f.rows();
        Ok(GradedCochain { degree: 0, table: Multilinear::from_fn(f.field(), vec![d], d, |w| f.column(w[0])) })
    }

    /// A bracket as a degree-1 cochain. Fails if the table is not alternating and cyclic.
    pub fn from_bracket(t: &LieTripleSystem) -> Result<Self> {
        Self::new(1, t.bracket().clone())
    }

    /// `φ: g → h` as a degree-0 cochain on `g ⊕ h`, zero on `h`.
    pub fn extend_by_zero(phi: &Matrix) -> Self {
        let (n, m) = (phi.rows(), phi.cols());
        let mut big = Matrix::zeros(phi.field(), m + n, m + n);
        for a in 0..n {
            for x in 0..m {
                big.set(m + a, x, phi.get(a, x).clone());
            }
        }
        GradedCochain::from_matrix(&big).expect("square by construction")
    }

    pub fn field(&self) -> FieldSpec {
        self.table.field()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.table.out_dim()
    }

    pub fn table(&self) -> &Multilinear {
        &self.table
    }

    pub fn into_table(self) -> Multilinear {
        self.table
    }

    /// The matrix of a degree-0 cochain.
    pub fn to_matrix(&self) -> Option<Matrix> {
        (self.degree == 0).then(|| {
            let cols: Vec<_> = (0..self.dim()).map(|i| self.table.value_vec(&[i])).collect();
            Matrix::from_columns(self.field(), self.dim(), &cols)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        GradedCochain { degree: self.degree, table: self.table.add(&other.table) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        GradedCochain { degree: self.degree, table: self.table.sub(&other.table) }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        GradedCochain { degree: self.degree, table: self.table.scale(c) }
    }

    pub fn neg(&self) -> Self {
        GradedCochain { degree: self.degree, table: self.table.neg() }
    }
}

/// All `(p, q)`-shuffles in lexicographic order of their first `p` entries,
/// each with whether its inversion count is odd.
pub fn shuffles(p: usize, q: usize) -> Vec<(Vec<usize>, bool)> {
    let total = p + q;
    let mut out = Vec::new();
    let mut first: Vec<usize> = (0..p).collect();
    loop {
        let mut perm = first.clone();
        perm.extend((0..total).filter(|i| !first.contains(i)));
        let inversions =
            (0..total).flat_map(|i| (i + 1..total).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        out.push((perm, inversions % 2 == 1));
        // next combination
        let Some(k) = (0..p).rev().find(|&k| first[k] < total - p + k) else {
            break;
        };
        first[k] += 1;
        for j in k + 1..p {
            first[j] = first[j - 1] + 1;
        }
    }
    out
}

fn check_same_space(f: &GradedCochain, g: &GradedCochain) -> Result<()> {
    if f.field() != g.field() {
        return Err(Error::FieldMismatch(f.field(), g.field()));
    }
    if f.dim() != g.dim() {
        return Err(Error::Shape(format!("cochains on spaces of dimension {} and {}", f.dim(), g.dim())));
    }
    Ok(())
}

/// The insertion `i_f(g)`, of degree `deg f + deg g`.
///
/// Arguments are read as pairs `X_1 … X_N` followed by a final `z`. Term `k`
/// of `f` receives `g` applied to `m` shuffled pairs and one member of the
/// pair `X_{k+m}`; the last term feeds `g(…, z)` into the final slot.
pub fn insertion(f: &GradedCochain, g: &GradedCochain) -> Result<GradedCochain> {
    check_same_space(f, g)?;
    let (n, m, d, field) = (f.degree, g.degree, f.dim(), f.field());
    let big = n + m;
    let shuffle_sets: Vec<Vec<(Vec<usize>, bool)>> =
        (1..=n + 1).map(|k| if k == n + 1 { shuffles(n, m) } else { shuffles(k - 1, m) }).collect();
    let (ft, gt) = (&f.table, &g.table);
    let table = Multilinear::from_fn(field, vec![d; 2 * big + 1], d, |idx| {
        let pair = |i: usize| [idx[2 * i], idx[2 * i + 1]];
        let z = idx[2 * big];
        let mut total = crate::linalg::Vector::zeros(field, d);
        for k in 1..=n + 1 {
            let outer_odd = (m * (k - 1)) % 2 == 1;
            for (perm, odd) in &shuffle_sets[k - 1] {
                let term = if k == n + 1 {
                    let mut gargs: Vec<usize> = perm[n..].iter().flat_map(|&i| pair(i)).collect();
                    gargs.push(z);
                    let inner = gt.value_vec(&gargs);
                    let mut fargs: Vec<Arg> = perm[..n].iter().flat_map(|&i| pair(i)).map(Arg::Basis).collect();
                    fargs.push(Arg::Vector(&inner));
                    ft.eval_mixed(&fargs)
                } else {
                    let [xk, yk] = pair(k + m - 1);
                    let head: Vec<usize> = perm[..k - 1].iter().flat_map(|&i| pair(i)).collect();
                    let gin: Vec<usize> = perm[k - 1..k - 1 + m].iter().flat_map(|&i| pair(i)).collect();
                    let mut tail: Vec<usize> = (k + m..big).flat_map(pair).collect();
                    tail.push(z);
                    let with = |last: usize| {
                        let mut a = gin.clone();
                        a.push(last);
                        gt.value_vec(&a)
                    };
                    let (gx, gy) = (with(xk), with(yk));
                    let assemble = |mid: [Arg; 2]| {
                        let mut a: Vec<Arg> = head.iter().copied().map(Arg::Basis).collect();
                        a.extend(mid);
                        a.extend(tail.iter().copied().map(Arg::Basis));
                        ft.eval_mixed(&a)
                    };
                    assemble([Arg::Vector(&gx), Arg::Basis(yk)]) + assemble([Arg::Basis(xk), Arg::Vector(&gy)])
                };
                if outer_odd != *odd {
                    total -= &term;
                } else {
                    total += &term;
                }
            }
        }
        total
    });
    Ok(GradedCochain { degree: big, table })
}

/// `[f, g] = (−1)^{nm} i_f(g) − i_g(f)`.
pub fn graded_bracket(f: &GradedCochain, g: &GradedCochain) -> Result<GradedCochain> {
    let fg = insertion(f, g)?;
    let gf = insertion(g, f)?;
    let odd = (f.degree * g.degree) % 2 == 1;
    let result = if odd { fg.neg().sub(&gf) } else { fg.sub(&gf) };
    #[cfg(debug_assertions)]
    {
        let swapped = if odd { gf.neg().sub(&fg) } else { gf.sub(&fg) };
        let expected = if odd { swapped } else { swapped.neg() };
        debug_assert_eq!(result, expected, "graded antisymmetry");
        let constrained = |c: &GradedCochain| cochain_constraint_violation(&c.table).is_none();
        if f.degree >= 1 && g.degree >= 1 && constrained(f) && constrained(g) {
            debug_assert!(cochain_constraint_violation(&result.table).is_none(), "bracket leaves the cochain space");
        }
    }
    Ok(result)
}

/// The differential graded Lie algebra `(C*(V,V), [·,·], d_π)` of a bracket `π`.
#[derive(Clone, Debug)]
pub struct DgLie {
    pi: GradedCochain,
}

impl DgLie {
    /// Requires `π` of degree 1 with `i_π(π) = 0`, which is `½[π,π] = 0` in any characteristic.
    pub fn new(pi: GradedCochain) -> Result<Self> {
        if pi.degree != 1 {
            return Err(Error::Shape(format!("π has degree {}, expected 1", pi.degree)));
        }
        if !insertion(&pi, &pi)?.is_zero() {
            return Err(Error::NotMaurerCartan { what: "π".into() });
        }
        Ok(DgLie { pi })
    }

    pub fn from_lts(t: &LieTripleSystem) -> Result<Self> {
        Self::new(GradedCochain::from_bracket(t)?)
    }

    /// `π_{g⊕h}`, the bracket of the direct sum.
    pub fn direct_sum(g: &LieTripleSystem, h: &LieTripleSystem) -> Result<Self> {
        Self::from_lts(&direct_sum(g, h)?)
    }

    pub fn pi(&self) -> &GradedCochain {
        &self.pi
    }

    /// `d_π f = [π, f]`.
    pub fn differential(&self, f: &GradedCochain) -> Result<GradedCochain> {
        graded_bracket(&self.pi, f)
    }

    /// `d_π η + ½[η,η]`, with `½[η,η]` evaluated as `−i_η(η)`.
    pub fn mc_defect(&self, eta: &GradedCochain) -> Result<GradedCochain> {
        if eta.degree != 1 {
            return Err(Error::Shape(format!("η has degree {}, expected 1", eta.degree)));
        }
        Ok(self.differential(eta)?.sub(&insertion(eta, eta)?))
    }

    /// Membership in the Maurer-Cartan set. A table that breaks the cochain
    /// constraints is not a degree-1 element, so it is rejected before the equation is tested.
    pub fn is_mc_element(&self, eta: &GradedCochain) -> Result<bool> {
        if cochain_constraint_violation(&eta.table).is_some() {
            return Ok(false);
        }
        Ok(self.mc_defect(eta)?.is_zero())
    }
}

/// Whether `[π, π] = 0` for a degree-1 cochain.
pub fn bracket_squares_to_zero(pi: &GradedCochain) -> Result<bool> {
    Ok(graded_bracket(pi, pi)?.is_zero())
}

/// `ω̄(x+a, y+b, z+c)`: the twisted part of the extension bracket, an element of `C¹_>(g ⊕ h, h)`.
pub fn lift_cocycle_to_mc(c: &NonAbelianCocycle) -> GradedCochain {
    let table = extension_table(c, false);
    debug_assert!(in_positive_subcomplex(&GradedCochain { degree: 1, table: table.clone() }, c.dim_g()));
    GradedCochain { degree: 1, table }
}

/// Membership in `C_>(g ⊕ h, h)` where `g` spans the first `m` coordinates:
/// values lie in `h`, and the map vanishes when every argument lies in `h`.
pub fn in_positive_subcomplex(f: &GradedCochain, m: usize) -> bool {
    let d = f.dim();
    if m > d {
        return false;
    }
    let arity = f.table.arity();
    indices(&vec![d; arity]).all(|idx| {
        let v = f.table.value(&idx);
        let pure_h = idx.iter().all(|&i| i >= m);
        v.iter().enumerate().all(|(l, s)| s.is_zero() || (l >= m && !pure_h))
    })
}

/// Dimensions of `C^n(g⊕h, h)`, of `C^n_>`, and of `C^n(h, h)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubcomplexDims {
    pub total: usize,
    pub positive: usize,
    pub pure: usize,
}

/// Computes the three dimensions, with `C^n_>` as the kernel of restriction to `h`.
/// Restriction is onto, so `total = positive + pure`; this is checked, not assumed.
pub fn subcomplex_dimensions(field: FieldSpec, degree: usize, m: usize, n: usize) -> Result<SubcomplexDims> {
    let d = m + n;
    let arity = 2 * degree + 1;
    let big = basis_for(field, degree, d, n);
    let pure = basis_for(field, degree, n, n).len();
    let rows: Vec<_> = big
        .iter()
        .map(|c| {
            let t = c.table();
            let mut v = Vec::new();
            for idx in indices(&vec![n; arity]) {
                let shifted: Vec<usize> = idx.iter().map(|&i| i + m).collect();
                v.extend(t.value(&shifted).iter().cloned());
            }
            crate::linalg::Vector(v)
        })
        .collect();
    let width = n.pow(arity as u32) * n;
    let restriction = Matrix::from_rows(field, width, &rows);
    let rank = restriction.rank();
    if rank != pure {
        return Err(Error::Inconsistent(format!("restriction has rank {rank}, expected {pure}")));
    }
    Ok(SubcomplexDims { total: big.len(), positive: big.len() - rank, pure })
}

fn check_gauge_shape(phi: &GradedCochain, m: usize) -> Result<Matrix> {
    let mat = phi.to_matrix().ok_or(Error::GaugeShape)?;
    let d = mat.rows();
    if m > d {
        return Err(Error::GaugeShape);
    }
    for r in 0..d {
        for c in 0..d {
            if (r < m || c >= m) && !mat.get(r, c).is_zero() {
                return Err(Error::GaugeShape);
            }
        }
    }
    Ok(mat)
}

/// `R^{[r]} X`: the sum over `r`-element sets of argument slots of `X` with `φ` applied in those slots.
fn divided_slots(x: &GradedCochain, phi: &Matrix, r: usize) -> Multilinear {
    let arity = x.table.arity();
    let mut acc = Multilinear::zeros(x.field(), x.table.dims().to_vec(), x.dim());
    for subset in shuffles(r, arity - r) {
        let mut t = x.table.clone();
        for &k in &subset.0[..r] {
            t = t.compose_slot(k, phi);
        }
        acc = acc.add(&t);
    }
    acc
}

/// `ad_φ^k / k!` in divided-power form, valid for `φ` of the `g → h` shape,
/// where `ad_φ = L − R` with `L` composing `φ` on the output and `L² = 0`.
pub fn ad_divided(phi: &GradedCochain, x: &GradedCochain, k: usize, m: usize) -> Result<GradedCochain> {
    check_same_space(phi, x)?;
    let mat = check_gauge_shape(phi, m)?;
    let sign = |e: usize| if e.is_multiple_of(2) { x.field().one() } else { -x.field().one() };
    let arity = x.table.arity();
    let mut t = Multilinear::zeros(x.field(), x.table.dims().to_vec(), x.dim());
    if k <= arity {
        t = t.add(&divided_slots(x, &mat, k).scale(&sign(k)));
    }
    if k >= 1 && k - 1 <= arity {
        t = t.add(&divided_slots(x, &mat, k - 1).compose_output(&mat).scale(&sign(k - 1)));
    }
    Ok(GradedCochain { degree: x.degree, table: t })
}

/// The gauge action of `φ: g → h` (a degree-0 cochain vanishing on `h` with
/// values in `h`) on a degree-1 `η`, computed as
/// `η + ad^{[1]}η + ad^{[2]}η + ad^{[1]}π + ad^{[2]}π + ad^{[3]}π`
/// with `ad^{[k]} = ad_φ^k/k!`. This is `e^{ad_φ}η − ((e^{ad_φ}−1)/ad_φ)d_π φ`
/// without division, so it works in every characteristic.
pub fn gauge_transform(dg: &DgLie, m: usize, phi: &GradedCochain, eta: &GradedCochain) -> Result<GradedCochain> {
    if eta.degree != 1 {
        return Err(Error::Shape(format!("η has degree {}, expected 1", eta.degree)));
    }
    check_same_space(&dg.pi, eta)?;
    let ad = |x: &GradedCochain, k: usize| ad_divided(phi, x, k, m);
    if !ad(eta, 3)?.is_zero() || !ad(&dg.pi, 4)?.is_zero() {
        return Err(Error::Inconsistent("gauge series does not terminate".into()));
    }
    let mut out = eta.clone();
    for k in 1..=2 {
        out = out.add(&ad(eta, k)?);
    }
    for k in 1..=3 {
        out = out.add(&ad(&dg.pi, k)?);
    }
    if dg.is_mc_element(eta)? && !dg.is_mc_element(&out)? {
        return Err(Error::Inconsistent("gauge transform left the Maurer-Cartan set".into()));
    }
    Ok(out)
}

/// The literal truncated series `η + ad η + ½ad²η − (dφ + ½ad dφ + ⅙ad²dφ)`
/// built from [`graded_bracket`]. Requires 6 to be invertible.
pub fn gauge_transform_series(dg: &DgLie, m: usize, phi: &GradedCochain, eta: &GradedCochain) -> Result<GradedCochain> {
    check_gauge_shape(phi, m)?;
    let field = eta.field();
    let half = field.fraction(1, 2).ok_or(Error::NotInvertible(2, field))?;
    let sixth = field.fraction(1, 6).ok_or(Error::NotInvertible(6, field))?;
    let ad = |x: &GradedCochain| graded_bracket(phi, x);
    let d_phi = dg.differential(phi)?;
    let ad_eta = ad(eta)?;
    let ad_d = ad(&d_phi)?;
    let kept = eta.add(&ad_eta).add(&ad(&ad_eta)?.scale(&half));
    let removed = d_phi.add(&ad_d.scale(&half)).add(&ad(&ad_d)?.scale(&sixth));
    Ok(kept.sub(&removed))
}
