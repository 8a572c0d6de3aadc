//! Non-abelian 3-cocycles `(ω, θ, ρ)`, the extensions they build, extraction
//! through sections, and equivalence of cocycles and extensions.

use crate::enumerate::matrices;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{Matrix, Vector};
use crate::lts::{is_homomorphism, LieTripleSystem};
use crate::report::AxiomReport;
use crate::tensor::{indices, Multilinear};

/// A candidate non-abelian 3-cocycle on `g` with values in `h`.
///
/// `omega` has shape `(m,m,m) → n`, `theta` stores `θ(x,y)a` as `(m,m,n) → n`
/// and `rho` stores `ρ(x)(a,b)` as `(m,n,n) → n`. `D_θ` and `D_ρ` are derived.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NonAbelianCocycle {
    g: LieTripleSystem,
    h: LieTripleSystem,
    omega: Multilinear,
    theta: Multilinear,
    rho: Multilinear,
}

impl NonAbelianCocycle {
    /// Checks fields and shapes only; use [`verify_cocycle`] for the identities.
    pub fn new(
        g: LieTripleSystem,
        h: LieTripleSystem,
        omega: Multilinear,
        theta: Multilinear,
        rho: Multilinear,
    ) -> Result<Self> {
        let field = g.field();
        for f in [h.field(), omega.field(), theta.field(), rho.field()] {
            if f != field {
                return Err(Error::FieldMismatch(field, f));
            }
        }
        let (m, n) = (g.dim(), h.dim());
        let expect = |name: &str, t: &Multilinear, dims: [usize; 3]| {
            if t.dims() != dims || t.out_dim() != n {
                Err(Error::Shape(format!(
                    "{name} has shape {:?} -> {}, expected {dims:?} -> {n}",
                    t.dims(),
                    t.out_dim()
                )))
            } else {
                Ok(())
            }
        };
        expect("omega", &omega, [m, m, m])?;
        expect("theta", &theta, [m, m, n])?;
        expect("rho", &rho, [m, n, n])?;
        Ok(NonAbelianCocycle { g, h, omega, theta, rho })
    }

    pub fn zero(g: LieTripleSystem, h: LieTripleSystem) -> Self {
        let (field, m, n) = (g.field(), g.dim(), h.dim());
        NonAbelianCocycle {
            omega: Multilinear::zeros(field, vec![m, m, m], n),
            theta: Multilinear::zeros(field, vec![m, m, n], n),
            rho: Multilinear::zeros(field, vec![m, n, n], n),
            g,
            h,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.g.field()
    }

    pub fn g(&self) -> &LieTripleSystem {
        &self.g
    }

    pub fn h(&self) -> &LieTripleSystem {
        &self.h
    }

    pub fn omega(&self) -> &Multilinear {
        &self.omega
    }

    pub fn theta(&self) -> &Multilinear {
        &self.theta
    }

    pub fn rho(&self) -> &Multilinear {
        &self.rho
    }

    pub fn dim_g(&self) -> usize {
        self.g.dim()
    }

    pub fn dim_h(&self) -> usize {
        self.h.dim()
    }

    /// True when `h` is abelian and `ρ = 0`, the abelian-extension case.
    pub fn is_abelian_type(&self) -> bool {
        self.h.is_abelian() && self.rho.is_zero()
    }

    pub fn om(&self, x: &Vector, y: &Vector, z: &Vector) -> Vector {
        self.omega.eval(&[x, y, z])
    }

    /// `θ(x,y)a`.
    pub fn th(&self, x: &Vector, y: &Vector, a: &Vector) -> Vector {
        self.theta.eval(&[x, y, a])
    }

    /// `D_θ(x,y)a = θ(y,x)a − θ(x,y)a`.
    pub fn dth(&self, x: &Vector, y: &Vector, a: &Vector) -> Vector {
        self.th(y, x, a) - self.th(x, y, a)
    }

    /// `ρ(x)(a,b)`.
    pub fn rh(&self, x: &Vector, a: &Vector, b: &Vector) -> Vector {
        self.rho.eval(&[x, a, b])
    }

    /// `D_ρ(x)(a,b) = ρ(x)(b,a) − ρ(x)(a,b)`.
    pub fn drh(&self, x: &Vector, a: &Vector, b: &Vector) -> Vector {
        self.rh(x, b, a) - self.rh(x, a, b)
    }

    pub fn verify(&self) -> AxiomReport {
        verify_cocycle(self)
    }

    /// The cocycle `c₁` that is equivalent to `self` through `φ: g → h`.
    pub fn shifted_by(&self, phi: &Matrix) -> Result<Self> {
        check_phi(phi, self)?;
        Ok(NonAbelianCocycle {
            g: self.g.clone(),
            h: self.h.clone(),
            omega: shift_omega(self, phi),
            theta: shift_theta(self, phi),
            rho: shift_rho(self, phi),
        })
    }

    /// Replaces one component, keeping shape checks.
    pub fn with_parts(&self, omega: Multilinear, theta: Multilinear, rho: Multilinear) -> Result<Self> {
        Self::new(self.g.clone(), self.h.clone(), omega, theta, rho)
    }
}

fn basis(field: FieldSpec, d: usize) -> Vec<Vector> {
    (0..d).map(|i| Vector::basis(field, d, i)).collect()
}

/// Checks ω-alternation and all cocycle identities on basis tuples. Witness
/// tuples list the `g` indices first, then the `h` indices.
pub fn verify_cocycle(c: &NonAbelianCocycle) -> AxiomReport {
    let (m, n) = (c.dim_g(), c.dim_h());
    let eg = basis(c.field(), m);
    let eh = basis(c.field(), n);
    let gb = |x: &Vector, y: &Vector, z: &Vector| c.g.br(x, y, z);
    let hb = |a: &Vector, b: &Vector, d: &Vector| c.h.br(a, b, d);
    let mut r = AxiomReport::default();

    r.scan("omega_alternating", &[m, m, m], |w| {
        if w[0] == w[1] {
            c.omega.value(w).iter().all(|v| v.is_zero())
        } else {
            c.omega.value_vec(w) + c.omega.value_vec(&[w[1], w[0], w[2]]) == Vector::zeros(c.field(), n)
        }
    });
    r.scan("omega_cyclic", &[m, m, m], |w| {
        let (x, y, z) = (&eg[w[0]], &eg[w[1]], &eg[w[2]]);
        (c.om(x, y, z) + c.om(y, z, x) + c.om(z, x, y)).is_zero()
    });
    r.scan("omega_derivation", &[m; 5], |w| {
        let (x1, x2, y1, y2, y3) = (&eg[w[0]], &eg[w[1]], &eg[w[2]], &eg[w[3]], &eg[w[4]]);
        let lhs = c.dth(x1, x2, &c.om(y1, y2, y3)) + c.om(x1, x2, &gb(y1, y2, y3));
        let rhs = c.om(&gb(x1, x2, y1), y2, y3) + c.th(y2, y3, &c.om(x1, x2, y1)) + c.om(y1, &gb(x1, x2, y2), y3)
            - c.th(y1, y3, &c.om(x1, x2, y2))
            + c.om(y1, y2, &gb(x1, x2, y3))
            + c.dth(y1, y2, &c.om(x1, x2, y3));
        lhs == rhs
    });
    r.scan("theta_d_theta", &[m, m, m, m, n], |w| {
        let (x, y, z, u, a) = (&eg[w[0]], &eg[w[1]], &eg[w[2]], &eg[w[3]], &eh[w[4]]);
        let lhs = c.dth(x, y, &c.th(z, u, a)) - c.th(z, u, &c.dth(x, y, a));
        let rhs = c.th(&gb(x, y, z), u, a) + c.th(z, &gb(x, y, u), a)
            - c.drh(u, &c.om(x, y, z), a)
            - c.rh(z, a, &c.om(x, y, u));
        lhs == rhs
    });
    r.scan("theta_bracket", &[m, m, m, m, n], |w| {
        let (x, y, z, u, a) = (&eg[w[0]], &eg[w[1]], &eg[w[2]], &eg[w[3]], &eh[w[4]]);
        let lhs = c.th(x, &gb(y, z, u), a) - c.rh(x, a, &c.om(y, z, u));
        let rhs = c.th(z, u, &c.th(x, y, a)) - c.th(y, u, &c.th(x, z, a)) + c.dth(y, z, &c.th(x, u, a));
        lhs == rhs
    });
    r.scan("rho_d_theta", &[m, m, m, n, n], |w| {
        let (x, y, z, a, b) = (&eg[w[0]], &eg[w[1]], &eg[w[2]], &eh[w[3]], &eh[w[4]]);
        let lhs = c.dth(x, y, &c.rh(z, a, b));
        let rhs = c.rh(z, &c.dth(x, y, a), b)
            + c.rh(&gb(x, y, z), a, b)
            + hb(&c.om(x, y, z), a, b)
            + c.rh(z, a, &c.dth(x, y, b));
        lhs == rhs
    });
    r.scan("rho_theta_left", &[m, m, m, n, n], |w| {
        let (x, y, z, a, b) = (&eg[w[0]], &eg[w[1]], &eg[w[2]], &eh[w[3]], &eh[w[4]]);
        let lhs = c.dth(y, z, &c.rh(x, a, b));
        let rhs = c.rh(x, a, &c.dth(y, z, b)) - c.rh(z, &c.th(x, y, a), b) + c.rh(y, &c.th(x, z, a), b);
        lhs == rhs
    });
    r.scan("theta_rho", &[m, m, m, n, n], |w| {
        let (x, y, z, a, b) = (&eg[w[0]], &eg[w[1]], &eg[w[2]], &eh[w[3]], &eh[w[4]]);
        let lhs = c.th(y, z, &c.rh(x, a, b));
        let rhs = c.rh(x, a, &c.th(y, z, b)) - c.drh(z, &c.th(x, y, a), b) - c.rh(y, b, &c.th(x, z, a));
        lhs == rhs
    });
    r.scan("d_theta_h_derivation", &[m, m, n, n, n], |w| {
        let (x, y, a, b, d) = (&eg[w[0]], &eg[w[1]], &eh[w[2]], &eh[w[3]], &eh[w[4]]);
        let lhs = c.dth(x, y, &hb(a, b, d));
        let rhs = hb(&c.dth(x, y, a), b, d) + hb(a, &c.dth(x, y, b), d) + hb(a, b, &c.dth(x, y, d));
        lhs == rhs
    });
    r.scan("rho_rho", &[m, m, n, n, n], |w| {
        let (x, y, a, b, d) = (&eg[w[0]], &eg[w[1]], &eh[w[2]], &eh[w[3]], &eh[w[4]]);
        let lhs = c.rh(x, a, &c.rh(y, b, d));
        let rhs = c.rh(y, &c.rh(x, a, b), d) + c.rh(y, b, &c.rh(x, a, d)) - hb(&c.th(x, y, a), b, d);
        lhs == rhs
    });
    r.scan("h_theta", &[m, m, n, n, n], |w| {
        let (x, y, a, b, d) = (&eg[w[0]], &eg[w[1]], &eh[w[2]], &eh[w[3]], &eh[w[4]]);
        let lhs = hb(a, b, &c.th(x, y, d));
        let rhs = c.th(x, y, &hb(a, b, d)) - c.drh(y, &c.drh(x, a, b), d) - c.rh(x, d, &c.drh(y, a, b));
        lhs == rhs
    });
    r.scan("h_rho", &[m, n, n, n, n], |w| {
        let (x, a, b, d, e) = (&eg[w[0]], &eh[w[1]], &eh[w[2]], &eh[w[3]], &eh[w[4]]);
        let lhs = hb(a, b, &c.rh(x, d, e));
        let rhs = c.rh(x, &hb(a, b, d), e) - hb(d, &c.drh(x, a, b), e) + c.rh(x, d, &hb(a, b, e));
        lhs == rhs
    });
    r.scan("rho_h_derivation", &[m, n, n, n, n], |w| {
        let (x, a, b, d, e) = (&eg[w[0]], &eh[w[1]], &eh[w[2]], &eh[w[3]], &eh[w[4]]);
        let lhs = c.rh(x, a, &hb(b, d, e));
        let rhs = hb(&c.rh(x, a, b), d, e) + hb(b, &c.rh(x, a, d), e) + hb(b, d, &c.rh(x, a, e));
        lhs == rhs
    });
    r
}

/// The bracket on `g ⊕ h` determined by a cocycle, on a split pair of arguments.
/// Without `brackets` the terms from `[·,·,·]_g` and `[·,·,·]_h` are dropped.
fn extension_bracket(c: &NonAbelianCocycle, args: [(&Vector, &Vector); 3], brackets: bool) -> (Vector, Vector) {
    let [(x, a), (y, b), (z, d)] = args;
    let mut bottom =
        c.om(x, y, z) + c.dth(x, y, d) + c.th(y, z, a) - c.th(x, z, b) + c.drh(z, a, b) + c.rh(x, b, d) - c.rh(y, a, d);
    if !brackets {
        return (Vector::zeros(c.field(), c.dim_g()), bottom);
    }
    bottom += &c.h.br(a, b, d);
    (c.g.br(x, y, z), bottom)
}

/// Structure constants of the bracket on `g ⊕ h`, basis `e₁…e_m, f₁…f_n`.
pub(crate) fn extension_table(c: &NonAbelianCocycle, brackets: bool) -> Multilinear {
    let (field, m, n) = (c.field(), c.dim_g(), c.dim_h());
    let parts: Vec<(Vector, Vector)> = (0..m + n)
        .map(|k| {
            if k < m {
                (Vector::basis(field, m, k), Vector::zeros(field, n))
            } else {
                (Vector::zeros(field, m), Vector::basis(field, n, k - m))
            }
        })
        .collect();
    Multilinear::from_fn(field, vec![m + n; 3], m + n, |w| {
        let [a, b, d] = [&parts[w[0]], &parts[w[1]], &parts[w[2]]];
        let (top, bottom) = extension_bracket(c, [(&a.0, &a.1), (&b.0, &b.1), (&d.0, &d.1)], brackets);
        top.concat(&bottom)
    })
}

/// A short exact sequence `0 → h →ⁱ ĝ →ᵖ g → 0` with a chosen section `s`.
///
/// The base bracket on `g` is `p[sx,sy,sz]` for the section supplied at
/// construction; the bracket on `h` is pulled back through `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    hat: LieTripleSystem,
    base: LieTripleSystem,
    kernel: LieTripleSystem,
    i: Matrix,
    p: Matrix,
    s: Matrix,
    frame_inv: Matrix,
}

impl Extension {
    /// Validates exactness, the section, and that `i(h)` is an ideal. With no
    /// section the canonical one from [`canonical_section`] is used.
    pub fn new(hat: LieTripleSystem, i: Matrix, p: Matrix, s: Option<Matrix>) -> Result<Self> {
        let field = hat.field();
        for f in [i.field(), p.field()] {
            if f != field {
                return Err(Error::FieldMismatch(field, f));
            }
        }
        let big = hat.dim();
        let (n, m) = (i.cols(), p.rows());
        if i.rows() != big || p.cols() != big {
            return Err(Error::Shape(format!(
                "i is {}x{}, p is {}x{}, but dim ĝ = {big}",
                i.rows(),
                i.cols(),
                p.rows(),
                p.cols()
            )));
        }
        if m + n != big {
            return Err(Error::InvalidExtension(format!("dim g + dim h = {} but dim ĝ = {big}", m + n)));
        }
        if i.rank() != n {
            return Err(Error::InvalidExtension("i is not injective".into()));
        }
        if p.rank() != m {
            return Err(Error::InvalidExtension("p is not surjective".into()));
        }
        if !p.mul(&i).is_zero() {
            return Err(Error::InvalidExtension("p∘i is not zero".into()));
        }
        let s = match s {
            Some(s) => s,
            None => canonical_section(&p)?,
        };
        let frame_inv = frame_inverse(&p, &i, &s)?;
        let mut ext = Extension {
            base: LieTripleSystem::zero(field, m),
            kernel: LieTripleSystem::zero(field, n),
            hat,
            i,
            p,
            s,
            frame_inv,
        };
        let ib: Vec<Vector> = (0..n).map(|a| ext.i.column(a)).collect();
        let e = basis(field, big);
        for u in 0..big {
            for v in 0..big {
                for (a, ia) in ib.iter().enumerate() {
                    let right = ext.hat.br(&e[u], &e[v], ia);
                    let left = ext.hat.br(ia, &e[u], &e[v]);
                    if ext.pull_back(&right).is_none() || ext.pull_back(&left).is_none() {
                        return Err(Error::NotIdeal(vec![u, v, a]));
                    }
                }
            }
        }
        ext.kernel = LieTripleSystem::from_fn(field, n, |w| {
            let v = ext.hat.br(&ib[w[0]], &ib[w[1]], &ib[w[2]]);
            ext.pull_back(&v).expect("ideal checked above")
        });
        let sb: Vec<Vector> = (0..m).map(|x| ext.s.column(x)).collect();
        ext.base = LieTripleSystem::from_fn(field, m, |w| ext.p.apply(&ext.hat.br(&sb[w[0]], &sb[w[1]], &sb[w[2]])));
        Ok(ext)
    }

    /// The same extension with another section; the base bracket is kept.
    pub fn with_section(&self, s: Matrix) -> Result<Self> {
        let frame_inv = frame_inverse(&self.p, &self.i, &s)?;
        Ok(Extension { s, frame_inv, ..self.clone() })
    }

    pub fn field(&self) -> FieldSpec {
        self.hat.field()
    }

    pub fn hat(&self) -> &LieTripleSystem {
        &self.hat
    }

    pub fn base(&self) -> &LieTripleSystem {
        &self.base
    }

    pub fn kernel(&self) -> &LieTripleSystem {
        &self.kernel
    }

    pub fn i(&self) -> &Matrix {
        &self.i
    }

    pub fn p(&self) -> &Matrix {
        &self.p
    }

    pub fn s(&self) -> &Matrix {
        &self.s
    }

    pub fn dim_g(&self) -> usize {
        self.p.rows()
    }

    pub fn dim_h(&self) -> usize {
        self.i.cols()
    }

    /// `[s | i]`, which maps `g ⊕ h` isomorphically onto `ĝ`.
    pub fn frame(&self) -> Matrix {
        self.s.hstack(&self.i)
    }

    pub fn frame_inverse(&self) -> &Matrix {
        &self.frame_inv
    }

    /// Splits `v = s(x) + i(a)` into `(x, a)`.
    pub fn decompose(&self, v: &Vector) -> (Vector, Vector) {
        let coords = self.frame_inv.apply(v);
        let m = self.dim_g();
        (coords.slice(0, m), coords.slice(m, coords.len()))
    }

    /// The unique `a` with `i(a) = v`, if `v ∈ i(h)`.
    pub fn pull_back(&self, v: &Vector) -> Option<Vector> {
        if !self.p.apply(v).is_zero() {
            return None;
        }
        Some(self.decompose(v).1)
    }
}

fn frame_inverse(p: &Matrix, i: &Matrix, s: &Matrix) -> Result<Matrix> {
    if s.rows() != p.cols() || s.cols() != p.rows() {
        return Err(Error::InvalidSection(format!(
            "section is {}x{}, expected {}x{}",
            s.rows(),
            s.cols(),
            p.cols(),
            p.rows()
        )));
    }
    if !p.mul(s).is_identity() {
        return Err(Error::InvalidSection("p∘s is not the identity".into()));
    }
    s.hstack(i).inverse().ok_or_else(|| Error::Inconsistent("[s | i] is singular for an exact sequence".into()))
}

/// Solves `p∘s = id` column by column with free variables set to zero.
pub fn canonical_section(p: &Matrix) -> Result<Matrix> {
    let m = p.rows();
    let cols = (0..m)
        .map(|x| {
            p.solve(&Vector::basis(p.field(), m, x))?.ok_or_else(|| Error::InvalidSection("p is not surjective".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(p.field(), p.cols(), &cols))
}

/// Builds `g ⊕ h` with the twisted bracket, the canonical `i`, `p`, and `s(x) = (x, 0)`.
/// No cocycle identity is required, so invalid triples give tables that fail [`crate::lts::verify_lts`].
pub fn build_extension(c: &NonAbelianCocycle) -> Result<Extension> {
    let (field, m, n) = (c.field(), c.dim_g(), c.dim_h());
    let hat = LieTripleSystem::new(extension_table(c, true))?;
    let i = Matrix::zeros(field, m, n).vstack(&Matrix::identity(field, n));
    let p = Matrix::identity(field, m).hstack(&Matrix::zeros(field, m, n));
    let s = Matrix::identity(field, m).vstack(&Matrix::zeros(field, n, m));
    let ext = Extension::new(hat, i, p, Some(s))?;
    debug_assert_eq!(ext.base, c.g);
    debug_assert_eq!(ext.kernel, c.h);
    Ok(ext)
}

/// The cocycle read off from an extension and its current section, with the
/// quotient bracket `p[sx,sy,sz]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub cocycle: NonAbelianCocycle,
    pub quotient: LieTripleSystem,
}

pub fn extract_cocycle(e: &Extension) -> Result<Extraction> {
    let (field, m, n) = (e.field(), e.dim_g(), e.dim_h());
    let sb: Vec<Vector> = (0..m).map(|x| e.s.column(x)).collect();
    let ib: Vec<Vector> = (0..n).map(|a| e.i.column(a)).collect();
    let quotient = LieTripleSystem::from_fn(field, m, |w| e.p.apply(&e.hat.br(&sb[w[0]], &sb[w[1]], &sb[w[2]])));
    if let Some(w) = quotient.bracket().first_difference(e.base.bracket()) {
        return Err(Error::QuotientMismatch(w));
    }
    let pull = |v: Vector, w: &[usize]| e.pull_back(&v).ok_or_else(|| Error::NotIdeal(w.to_vec()));
    let mut omega = Multilinear::zeros(field, vec![m, m, m], n);
    for w in indices(&[m, m, m]) {
        let v = e.hat.br(&sb[w[0]], &sb[w[1]], &sb[w[2]]) - e.s.apply(&e.base.br_basis(w[0], w[1], w[2]));
        omega.set_value(&w, &pull(v, &w)?);
    }
    let mut theta = Multilinear::zeros(field, vec![m, m, n], n);
    for w in indices(&[m, m, n]) {
        let v = e.hat.br(&ib[w[2]], &sb[w[0]], &sb[w[1]]);
        theta.set_value(&w, &pull(v, &w)?);
    }
    let mut rho = Multilinear::zeros(field, vec![m, n, n], n);
    for w in indices(&[m, n, n]) {
        let v = e.hat.br(&sb[w[0]], &ib[w[1]], &ib[w[2]]);
        rho.set_value(&w, &pull(v, &w)?);
    }
    let cocycle = NonAbelianCocycle::new(e.base.clone(), e.kernel.clone(), omega, theta, rho)?;
    Ok(Extraction { cocycle, quotient })
}

fn check_phi(phi: &Matrix, c: &NonAbelianCocycle) -> Result<()> {
    if phi.field() != c.field() {
        return Err(Error::FieldMismatch(c.field(), phi.field()));
    }
    if phi.rows() != c.dim_h() || phi.cols() != c.dim_g() {
        return Err(Error::Shape(format!("φ is {}x{}, expected {}x{}", phi.rows(), phi.cols(), c.dim_h(), c.dim_g())));
    }
    Ok(())
}

fn check_pair(c1: &NonAbelianCocycle, c2: &NonAbelianCocycle) -> Result<()> {
    if c1.field() != c2.field() {
        return Err(Error::FieldMismatch(c1.field(), c2.field()));
    }
    if c1.g != c2.g || c1.h != c2.h {
        return Err(Error::Shape("cocycles are over different g or h".into()));
    }
    Ok(())
}

fn shift_rho(c: &NonAbelianCocycle, phi: &Matrix) -> Multilinear {
    let (m, n) = (c.dim_g(), c.dim_h());
    let eh = basis(c.field(), n);
    Multilinear::from_fn(c.field(), vec![m, n, n], n, |w| {
        let px = phi.column(w[0]);
        c.rho.value_vec(w) + c.h.br(&eh[w[1]], &px, &eh[w[2]])
    })
}

fn shift_theta(c: &NonAbelianCocycle, phi: &Matrix) -> Multilinear {
    let (m, n) = (c.dim_g(), c.dim_h());
    let eg = basis(c.field(), m);
    let eh = basis(c.field(), n);
    Multilinear::from_fn(c.field(), vec![m, m, n], n, |w| {
        let (x, y, a) = (&eg[w[0]], &eg[w[1]], &eh[w[2]]);
        let (px, py) = (phi.column(w[0]), phi.column(w[1]));
        c.theta.value_vec(w) + c.rh(x, a, &py) - c.drh(y, a, &px) + c.h.br(a, &px, &py)
    })
}

fn shift_omega(c: &NonAbelianCocycle, phi: &Matrix) -> Multilinear {
    let (m, n) = (c.dim_g(), c.dim_h());
    let eg = basis(c.field(), m);
    Multilinear::from_fn(c.field(), vec![m, m, m], n, |w| {
        let (x, y, z) = (&eg[w[0]], &eg[w[1]], &eg[w[2]]);
        let (px, py, pz) = (phi.column(w[0]), phi.column(w[1]), phi.column(w[2]));
        c.omega.value_vec(w) + c.th(x, z, &py) - c.dth(x, y, &pz) + c.rh(x, &py, &pz) - c.th(y, z, &px)
            + c.drh(z, &px, &py)
            - c.rh(y, &px, &pz)
            - c.h.br(&px, &py, &pz)
            + phi.apply(&c.g.br_basis(w[0], w[1], w[2]))
    })
}

/// Whether `φ` carries `c2` onto `c1`, comparing `ρ`, then `θ`, then `ω`.
fn shift_matches(phi: &Matrix, c1: &NonAbelianCocycle, c2: &NonAbelianCocycle) -> bool {
    shift_rho(c2, phi) == c1.rho && shift_theta(c2, phi) == c1.theta && shift_omega(c2, phi) == c1.omega
}

/// Per-equation report for a candidate `φ`, including the two derived equations on `D_θ` and `D_ρ`.
pub fn equivalence_report(phi: &Matrix, c1: &NonAbelianCocycle, c2: &NonAbelianCocycle) -> Result<AxiomReport> {
    check_pair(c1, c2)?;
    check_phi(phi, c1)?;
    let (field, m, n) = (c1.field(), c1.dim_g(), c1.dim_h());
    let eg = basis(field, m);
    let eh = basis(field, n);
    let (w1, t1, r1) = (shift_omega(c2, phi), shift_theta(c2, phi), shift_rho(c2, phi));
    let mut report = AxiomReport::default();
    report.scan("omega_shift", &[m, m, m], |w| c1.omega.value(w) == w1.value(w));
    report.scan("theta_shift", &[m, m, n], |w| c1.theta.value(w) == t1.value(w));
    report.scan("rho_shift", &[m, n, n], |w| c1.rho.value(w) == r1.value(w));
    report.scan("d_theta_shift", &[m, m, n], |w| {
        let (x, y, a) = (&eg[w[0]], &eg[w[1]], &eh[w[2]]);
        let (px, py) = (phi.column(w[0]), phi.column(w[1]));
        c1.dth(x, y, a) - c2.dth(x, y, a) == c2.rh(y, &px, a) - c2.rh(x, &py, a) + c2.h.br(&px, &py, a)
    });
    report.scan("d_rho_shift", &[m, n, n], |w| {
        let (x, a, b) = (&eg[w[0]], &eh[w[1]], &eh[w[2]]);
        c1.drh(x, a, b) - c2.drh(x, a, b) == c2.h.br(b, a, &phi.column(w[0]))
    });
    Ok(report)
}

/// True when `φ` witnesses `c1 ~ c2`. The derived equations are then
/// asserted; their failure is reported as an internal inconsistency.
pub fn cocycles_equivalent_via(phi: &Matrix, c1: &NonAbelianCocycle, c2: &NonAbelianCocycle) -> Result<bool> {
    let report = equivalence_report(phi, c1, c2)?;
    let primary = ["omega_shift", "theta_shift", "rho_shift"];
    if !primary.iter().all(|k| report.get(k).is_some_and(|c| c.passed())) {
        return Ok(false);
    }
    if let Some(bad) = report.first_failure() {
        return Err(Error::Inconsistent(format!(
            "{} fails at {:?} although the defining equations hold",
            bad.name, bad.witness
        )));
    }
    Ok(true)
}

/// Lexicographically first `φ: g → h` with `c1 ~ c2`, by exhaustive search.
pub fn find_equivalence(c1: &NonAbelianCocycle, c2: &NonAbelianCocycle, budget: u128) -> Result<Option<Matrix>> {
    check_pair(c1, c2)?;
    for phi in matrices(c1.field(), c1.dim_h(), c1.dim_g(), budget)? {
        if shift_matches(&phi, c1, c2) {
            if !cocycles_equivalent_via(&phi, c1, c2)? {
                return Err(Error::Inconsistent("search and check disagree".into()));
            }
            return Ok(Some(phi));
        }
    }
    Ok(None)
}

/// Splits cocycles into equivalence classes; each class lists indices in input order.
pub fn equivalence_classes(cs: &[NonAbelianCocycle], budget: u128) -> Result<Vec<Vec<usize>>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    'next: for (k, c) in cs.iter().enumerate() {
        for class in classes.iter_mut() {
            if find_equivalence(c, &cs[class[0]], budget)?.is_some() {
                class.push(k);
                continue 'next;
            }
        }
        classes.push(vec![k]);
    }
    Ok(classes)
}

/// Every triple over a finite field on the given `g`, `h` that passes [`verify_cocycle`].
pub fn enumerate_cocycles(g: &LieTripleSystem, h: &LieTripleSystem, budget: u128) -> Result<Vec<NonAbelianCocycle>> {
    let (field, m, n) = (g.field(), g.dim(), h.dim());
    let (lw, lt) = (m * m * m * n, m * m * n * n);
    let total = lw + lt + m * n * n * n;
    let mut out = Vec::new();
    for flat in matrices(field, 1, total, budget)? {
        let data = flat.entries();
        let omega = Multilinear::from_coefficients(field, vec![m, m, m], n, data[..lw].to_vec())?;
        let theta = Multilinear::from_coefficients(field, vec![m, m, n], n, data[lw..lw + lt].to_vec())?;
        let rho = Multilinear::from_coefficients(field, vec![m, n, n], n, data[lw + lt..].to_vec())?;
        let c = NonAbelianCocycle::new(g.clone(), h.clone(), omega, theta, rho)?;
        if verify_cocycle(&c).passed() {
            out.push(c);
        }
    }
    Ok(out)
}

fn check_same_ends(e1: &Extension, e2: &Extension) -> Result<()> {
    if e1.base != e2.base || e1.kernel != e2.kernel {
        return Err(Error::Shape("extensions of different g or h".into()));
    }
    Ok(())
}

/// The map `f = [s₂ − i₂φ | i₂]·[s₁ | i₁]⁻¹`, checked to be a homomorphism
/// with `f∘i₁ = i₂` and `p₂∘f = p₁`.
pub fn equivalence_map(phi: &Matrix, e1: &Extension, e2: &Extension) -> Result<Matrix> {
    check_same_ends(e1, e2)?;
    let target = e2.s.sub(&e2.i.mul(phi)).hstack(&e2.i);
    let f = target.mul(&e1.frame_inv);
    if !is_homomorphism(&f, &e1.hat, &e2.hat) {
        return Err(Error::Inconsistent("equivalence map is not a homomorphism".into()));
    }
    if f.mul(&e1.i) != e2.i || e2.p.mul(&f) != e1.p {
        return Err(Error::Inconsistent("equivalence map does not commute with i and p".into()));
    }
    Ok(f)
}

/// An equivalence `ĝ₁ → ĝ₂` from a supplied `φ`, or `None` when `φ` is not a witness.
pub fn extensions_equivalent_via(phi: &Matrix, e1: &Extension, e2: &Extension) -> Result<Option<Matrix>> {
    check_same_ends(e1, e2)?;
    let c1 = extract_cocycle(e1)?.cocycle;
    let c2 = extract_cocycle(e2)?.cocycle;
    if !cocycles_equivalent_via(phi, &c1, &c2)? {
        return Ok(None);
    }
    equivalence_map(phi, e1, e2).map(Some)
}

/// Searches for an equivalence of extensions over a finite field.
pub fn extensions_equivalent(e1: &Extension, e2: &Extension, budget: u128) -> Result<Option<Matrix>> {
    check_same_ends(e1, e2)?;
    let c1 = extract_cocycle(e1)?.cocycle;
    let c2 = extract_cocycle(e2)?.cocycle;
    match find_equivalence(&c1, &c2, budget)? {
        Some(phi) => equivalence_map(&phi, e1, e2).map(Some),
        None => Ok(None),
    }
}
