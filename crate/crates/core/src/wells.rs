//! Automorphism pairs, inducibility, the Wells map, non-abelian 1-cocycles and
//! the exact sequence relating them, with the abelian specialization.

use crate::enumerate::{check_budget, invertible_matrices, matrices, search_size};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{Matrix, Vector};
use crate::lts::{is_abelian_ideal, is_automorphism, LieTripleSystem, Representation};
use crate::nonabelian::{cocycles_equivalent_via, extract_cocycle, find_equivalence, Extension, NonAbelianCocycle};
use crate::report::AxiomReport;
use crate::tensor::Multilinear;
use crate::yamaguti::{coboundary_preimage, YamagutiCochain};

/// A pair `(α, β)` of invertible maps on `g` and `h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AutPair {
    alpha: Matrix,
    beta: Matrix,
}

impl AutPair {
    /// Checks squareness and invertibility; [`AutPair::check`] adds the automorphism test.
    pub fn new(alpha: Matrix, beta: Matrix) -> Result<Self> {
        if alpha.field() != beta.field() {
            return Err(Error::FieldMismatch(alpha.field(), beta.field()));
        }
        if !alpha.is_invertible() {
            return Err(Error::Singular("α".into()));
        }
        if !beta.is_invertible() {
            return Err(Error::Singular("β".into()));
        }
        Ok(AutPair { alpha, beta })
    }

    pub fn identity(field: FieldSpec, m: usize, n: usize) -> Self {
        AutPair { alpha: Matrix::identity(field, m), beta: Matrix::identity(field, n) }
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    pub fn beta(&self) -> &Matrix {
        &self.beta
    }

    pub fn is_identity(&self) -> bool {
        self.alpha.is_identity() && self.beta.is_identity()
    }

    /// Componentwise product `(α₁α₂, β₁β₂)`.
    pub fn compose(&self, other: &AutPair) -> AutPair {
        AutPair { alpha: self.alpha.mul(&other.alpha), beta: self.beta.mul(&other.beta) }
    }

    pub fn inverse(&self) -> AutPair {
        AutPair {
            alpha: self.alpha.inverse().expect("invertible by construction"),
            beta: self.beta.inverse().expect("invertible by construction"),
        }
    }

    /// Requires `α ∈ Aut(g)` and `β ∈ Aut(h)`.
    pub fn check(&self, g: &LieTripleSystem, h: &LieTripleSystem) -> Result<()> {
        if self.alpha.rows() != g.dim() || self.beta.rows() != h.dim() {
            return Err(Error::Shape(format!(
                "pair acts on dimensions {} and {}, expected {} and {}",
                self.alpha.rows(),
                self.beta.rows(),
                g.dim(),
                h.dim()
            )));
        }
        if !is_automorphism(&self.alpha, g) {
            return Err(Error::NotAutomorphism("α".into()));
        }
        if !is_automorphism(&self.beta, h) {
            return Err(Error::NotAutomorphism("β".into()));
        }
        Ok(())
    }
}

/// `(βω(α⁻¹·,α⁻¹·,α⁻¹·), βθ(α⁻¹·,α⁻¹·)β⁻¹, βρ(α⁻¹·)(β⁻¹·,β⁻¹·))`.
pub fn transform_cocycle(pair: &AutPair, c: &NonAbelianCocycle) -> Result<NonAbelianCocycle> {
    if pair.alpha.rows() != c.dim_g() || pair.beta.rows() != c.dim_h() {
        return Err(Error::Shape("pair does not act on this cocycle".into()));
    }
    let ai = pair.alpha.inverse().ok_or_else(|| Error::Singular("α".into()))?;
    let bi = pair.beta.inverse().ok_or_else(|| Error::Singular("β".into()))?;
    let b = &pair.beta;
    let omega = c.omega().compose_slot(0, &ai).compose_slot(1, &ai).compose_slot(2, &ai).compose_output(b);
    let theta = c.theta().compose_slot(0, &ai).compose_slot(1, &ai).compose_slot(2, &bi).compose_output(b);
    let rho = c.rho().compose_slot(0, &ai).compose_slot(1, &bi).compose_slot(2, &bi).compose_output(b);
    c.with_parts(omega, theta, rho)
}

/// Columns of `i`, the image of the basis of `h`.
fn kernel_columns(e: &Extension) -> Vec<Vector> {
    (0..e.dim_h()).map(|a| e.i().column(a)).collect()
}

/// An automorphism of `ĝ` with `γ(i(h)) = i(h)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RestrictedAutomorphism {
    gamma: Matrix,
}

impl RestrictedAutomorphism {
    pub fn new(gamma: Matrix, e: &Extension) -> Result<Self> {
        if gamma.rows() != e.hat().dim() || !is_automorphism(&gamma, e.hat()) {
            return Err(Error::NotAutomorphism("γ".into()));
        }
        for col in kernel_columns(e) {
            if e.pull_back(&gamma.apply(&col)).is_none() {
                return Err(Error::NotRestricted);
            }
        }
        Ok(RestrictedAutomorphism { gamma })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.gamma
    }

    pub fn compose(&self, other: &RestrictedAutomorphism) -> RestrictedAutomorphism {
        RestrictedAutomorphism { gamma: self.gamma.mul(&other.gamma) }
    }
}

/// `λ(γ) = (pγs, γ|_h)`. The first component is re-checked to be an automorphism of `g`.
pub fn lambda_map(gamma: &RestrictedAutomorphism, e: &Extension) -> Result<AutPair> {
    let alpha = e.p().mul(&gamma.gamma).mul(e.s());
    let cols = kernel_columns(e)
        .iter()
        .map(|c| e.pull_back(&gamma.gamma.apply(c)).ok_or(Error::NotRestricted))
        .collect::<Result<Vec<_>>>()?;
    let beta = Matrix::from_columns(e.field(), e.dim_h(), &cols);
    let pair = AutPair::new(alpha, beta)?;
    pair.check(e.base(), e.kernel())
        .map_err(|err| Error::Inconsistent(format!("λ(γ) is not an automorphism pair: {err}")))?;
    Ok(pair)
}

/// The three inducibility equations for `φ: g → h` against the cocycle of a section.
pub fn iam_report(pair: &AutPair, phi: &Matrix, c: &NonAbelianCocycle) -> Result<AxiomReport> {
    check_shapes(pair, phi, c)?;
    let (m, n) = (c.dim_g(), c.dim_h());
    let ctx = Ctx::new(pair, phi, c);
    let mut r = AxiomReport::default();
    r.scan("iam_rho", &[m, n, n], |w| ctx.iam_rho(w));
    r.scan("iam_theta", &[m, m, n], |w| ctx.iam_theta(w));
    r.scan("iam_omega", &[m, m, m], |w| ctx.iam_omega(w));
    Ok(r)
}

fn check_shapes(pair: &AutPair, phi: &Matrix, c: &NonAbelianCocycle) -> Result<()> {
    let (m, n) = (c.dim_g(), c.dim_h());
    if pair.alpha.rows() != m || pair.beta.rows() != n {
        return Err(Error::Shape("pair does not act on this cocycle".into()));
    }
    if phi.rows() != n || phi.cols() != m {
        return Err(Error::Shape(format!("φ is {}x{}, expected {n}x{m}", phi.rows(), phi.cols())));
    }
    Ok(())
}

/// Precomputed images of basis vectors for the inducibility equations.
struct Ctx<'a> {
    c: &'a NonAbelianCocycle,
    pair: &'a AutPair,
    eg: Vec<Vector>,
    eh: Vec<Vector>,
    ax: Vec<Vector>,
    bx: Vec<Vector>,
    px: Vec<Vector>,
}

impl<'a> Ctx<'a> {
    fn new(pair: &'a AutPair, phi: &Matrix, c: &'a NonAbelianCocycle) -> Self {
        let (field, m, n) = (c.field(), c.dim_g(), c.dim_h());
        Ctx {
            c,
            pair,
            eg: (0..m).map(|i| Vector::basis(field, m, i)).collect(),
            eh: (0..n).map(|i| Vector::basis(field, n, i)).collect(),
            ax: (0..m).map(|i| pair.alpha.column(i)).collect(),
            bx: (0..n).map(|i| pair.beta.column(i)).collect(),
            px: (0..m).map(|i| phi.column(i)).collect(),
        }
    }

    fn iam_rho(&self, w: &[usize]) -> bool {
        let (c, b) = (self.c, &self.pair.beta);
        let (x, a, bb) = (w[0], w[1], w[2]);
        let lhs = b.apply(&c.rh(&self.eg[x], &self.eh[a], &self.eh[bb])) - c.rh(&self.ax[x], &self.bx[a], &self.bx[bb]);
        lhs == c.h().br(&self.bx[a], &self.px[x], &self.bx[bb])
    }

    fn iam_theta(&self, w: &[usize]) -> bool {
        let (c, b) = (self.c, &self.pair.beta);
        let (x, y, a) = (w[0], w[1], w[2]);
        let ba = &self.bx[a];
        let lhs = b.apply(&c.th(&self.eg[x], &self.eg[y], &self.eh[a])) - c.th(&self.ax[x], &self.ax[y], ba);
        let rhs = c.h().br(ba, &self.px[x], &self.px[y]) - c.drh(&self.ax[y], ba, &self.px[x])
            + c.rh(&self.ax[x], ba, &self.px[y]);
        lhs == rhs
    }

    fn iam_omega(&self, w: &[usize]) -> bool {
        let (c, b) = (self.c, &self.pair.beta);
        let (x, y, z) = (w[0], w[1], w[2]);
        let (ax, ay, az) = (&self.ax[x], &self.ax[y], &self.ax[z]);
        let (px, py, pz) = (&self.px[x], &self.px[y], &self.px[z]);
        let lhs = b.apply(&c.omega().value_vec(w)) - c.om(ax, ay, az);
        let phi_br = self.phi_apply(&c.g().br_basis(x, y, z));
        let rhs = c.drh(az, px, py) - c.rh(ay, px, pz) - c.th(ay, az, px) + c.rh(ax, py, pz) + c.th(ax, az, py)
            - c.dth(ax, ay, pz)
            + phi_br
            - c.h().br(px, py, pz);
        lhs == rhs
    }

    fn phi_apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::zeros(self.c.field(), self.c.dim_h());
        for (i, s) in v.support() {
            out.axpy(s, &self.px[i]);
        }
        out
    }

    fn holds(&self) -> bool {
        let (m, n) = (self.c.dim_g(), self.c.dim_h());
        let all = |dims: [usize; 3], f: &dyn Fn(&[usize]) -> bool| crate::tensor::indices(&dims).all(|w| f(&w));
        all([m, n, n], &|w| self.iam_rho(w))
            && all([m, m, n], &|w| self.iam_theta(w))
            && all([m, m, m], &|w| self.iam_omega(w))
    }
}

/// Whether `φ` satisfies the inducibility equations for the extension's current section.
pub fn check_inducibility_witness(pair: &AutPair, phi: &Matrix, e: &Extension) -> Result<bool> {
    let c = extract_cocycle(e)?.cocycle;
    Ok(iam_report(pair, phi, &c)?.passed())
}

/// Lexicographically first `φ` solving the inducibility equations, by exhaustive search.
pub fn is_inducible(pair: &AutPair, e: &Extension, budget: u128) -> Result<Option<Matrix>> {
    pair.check(e.base(), e.kernel())?;
    let c = extract_cocycle(e)?.cocycle;
    for phi in matrices(e.field(), e.dim_h(), e.dim_g(), budget)? {
        if Ctx::new(pair, &phi, &c).holds() {
            return Ok(Some(phi));
        }
    }
    Ok(None)
}

/// `γ(s(x) + i(a)) = sα(x) − iφ(x) + iβ(a)`, after checking `φ`.
pub fn lift_pair(pair: &AutPair, phi: &Matrix, e: &Extension) -> Result<RestrictedAutomorphism> {
    pair.check(e.base(), e.kernel())?;
    let c = extract_cocycle(e)?.cocycle;
    let report = iam_report(pair, phi, &c)?;
    if let Some(bad) = report.first_failure() {
        return Err(Error::WitnessRejected {
            identity: bad.name.to_string(),
            witness: bad.witness.clone().unwrap_or_default(),
        });
    }
    let images = e.s().mul(&pair.alpha).sub(&e.i().mul(phi)).hstack(&e.i().mul(&pair.beta));
    let gamma = RestrictedAutomorphism::new(images.mul(e.frame_inverse()), e)
        .map_err(|err| Error::Inconsistent(format!("lifted map is not a restricted automorphism: {err}")))?;
    if lambda_map(&gamma, e)? != *pair {
        return Err(Error::Inconsistent("λ of the lift differs from the pair".into()));
    }
    Ok(gamma)
}

/// `W(α, β)`, decided as equivalence of the transformed and original cocycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellsObstruction {
    pub original: NonAbelianCocycle,
    pub transformed: NonAbelianCocycle,
    /// `φ` with `transformed ~ original` through `φ`, when one exists.
    pub witness: Option<Matrix>,
}

impl WellsObstruction {
    pub fn vanishes(&self) -> bool {
        self.witness.is_some()
    }
}

pub fn wells_obstruction(pair: &AutPair, e: &Extension, budget: u128) -> Result<WellsObstruction> {
    pair.check(e.base(), e.kernel())?;
    let original = extract_cocycle(e)?.cocycle;
    let transformed = transform_cocycle(pair, &original)?;
    let witness = find_equivalence(&transformed, &original, budget)?;
    Ok(WellsObstruction { original, transformed, witness })
}

/// Checks a supplied witness for the vanishing of `W(α, β)`; usable over ℚ.
pub fn wells_obstruction_via(pair: &AutPair, phi: &Matrix, e: &Extension) -> Result<WellsObstruction> {
    pair.check(e.base(), e.kernel())?;
    let original = extract_cocycle(e)?.cocycle;
    let transformed = transform_cocycle(pair, &original)?;
    let ok = cocycles_equivalent_via(phi, &transformed, &original)?;
    Ok(WellsObstruction { original, transformed, witness: ok.then(|| phi.clone()) })
}

/// The three conditions defining non-abelian 1-cocycles `g → h`.
pub fn z1_report(phi: &Matrix, c: &NonAbelianCocycle) -> Result<AxiomReport> {
    let id = AutPair::identity(c.field(), c.dim_g(), c.dim_h());
    check_shapes(&id, phi, c)?;
    let (field, m, n) = (c.field(), c.dim_g(), c.dim_h());
    let eg: Vec<Vector> = (0..m).map(|i| Vector::basis(field, m, i)).collect();
    let eh: Vec<Vector> = (0..n).map(|i| Vector::basis(field, n, i)).collect();
    let p: Vec<Vector> = (0..m).map(|i| phi.column(i)).collect();
    let h = c.h();
    let mut r = AxiomReport::default();
    r.scan("z1_bracket", &[m, n, n], |w| h.br(&eh[w[1]], &p[w[0]], &eh[w[2]]).is_zero());
    r.scan("z1_mixed", &[m, m, n], |w| {
        let (x, y, a) = (&eg[w[0]], &eg[w[1]], &eh[w[2]]);
        let (px, py) = (&p[w[0]], &p[w[1]]);
        (h.br(a, px, py) - c.drh(y, a, px) + c.rh(x, a, py)).is_zero()
    });
    r.scan("z1_cubic", &[m, m, m], |w| {
        let (x, y, z) = (&eg[w[0]], &eg[w[1]], &eg[w[2]]);
        let (px, py, pz) = (&p[w[0]], &p[w[1]], &p[w[2]]);
        let lhs =
            c.drh(z, px, py) - c.rh(y, px, pz) - c.th(y, z, px) + c.rh(x, py, pz) + c.th(x, z, py) - c.dth(x, y, pz);
        lhs == h.br(px, py, pz) - phi.apply(&c.g().br_basis(w[0], w[1], w[2]))
    });
    Ok(r)
}

pub fn z1_membership(phi: &Matrix, c: &NonAbelianCocycle) -> Result<bool> {
    Ok(z1_report(phi, c)?.passed())
}

/// Every non-abelian 1-cocycle, in lexicographic order.
pub fn enumerate_z1(c: &NonAbelianCocycle, budget: u128) -> Result<Vec<Matrix>> {
    let mut out = Vec::new();
    for phi in matrices(c.field(), c.dim_h(), c.dim_g(), budget)? {
        if z1_membership(&phi, c)? {
            out.push(phi);
        }
    }
    Ok(out)
}

/// `K(γ) = s − γs`, read in `h`. Requires `λ(γ) = (id, id)`.
pub fn k_map(gamma: &RestrictedAutomorphism, e: &Extension) -> Result<Matrix> {
    if !lambda_map(gamma, e)?.is_identity() {
        return Err(Error::NotInKernel);
    }
    let diff = e.s().sub(&gamma.gamma.mul(e.s()));
    let cols = (0..e.dim_g())
        .map(|x| e.pull_back(&diff.column(x)).ok_or_else(|| Error::Inconsistent("s − γs leaves i(h)".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(e.field(), e.dim_h(), &cols))
}

/// `γ(s(x) + i(a)) = s(x) − iφ(x) + i(a)` for `φ ∈ Z¹_nab`.
pub fn k_inverse(phi: &Matrix, e: &Extension) -> Result<RestrictedAutomorphism> {
    let c = extract_cocycle(e)?.cocycle;
    let report = z1_report(phi, &c)?;
    if let Some(bad) = report.first_failure() {
        return Err(Error::WitnessRejected {
            identity: bad.name.to_string(),
            witness: bad.witness.clone().unwrap_or_default(),
        });
    }
    let images = e.s().sub(&e.i().mul(phi)).hstack(e.i());
    RestrictedAutomorphism::new(images.mul(e.frame_inverse()), e)
        .map_err(|err| Error::Inconsistent(format!("K⁻¹(φ) is not a restricted automorphism: {err}")))
}

/// All automorphisms of an LTS over a finite field.
pub fn automorphisms(t: &LieTripleSystem, budget: u128) -> Result<Vec<Matrix>> {
    Ok(invertible_matrices(t.field(), t.dim(), budget)?.into_iter().filter(|f| is_automorphism(f, t)).collect())
}

/// All of `Aut_h(ĝ)`: in the basis `[s | i]` these are exactly the invertible
/// block lower-triangular matrices `[[A, 0], [C, B]]` that are automorphisms.
pub fn restricted_automorphisms(e: &Extension, budget: u128) -> Result<Vec<RestrictedAutomorphism>> {
    let (field, m, n) = (e.field(), e.dim_g(), e.dim_h());
    let needed = search_size(field, m * m + n * n + m * n)?;
    check_budget(needed, budget)?;
    let frame = e.frame();
    let mut out = Vec::new();
    let gl_m = invertible_matrices(field, m, budget)?;
    let gl_n = invertible_matrices(field, n, budget)?;
    for a in &gl_m {
        for b in &gl_n {
            for c in matrices(field, n, m, budget)? {
                let block = a.hstack(&Matrix::zeros(field, m, n)).vstack(&c.hstack(b));
                let gamma = frame.mul(&block).mul(e.frame_inverse());
                if is_automorphism(&gamma, e.hat()) {
                    out.push(RestrictedAutomorphism { gamma });
                }
            }
        }
    }
    Ok(out)
}

/// Cardinalities and exactness verdicts for `1 → ker λ → Aut_h(ĝ) → Aut(g)×Aut(h) → H³_nab`
/// and for the isomorphism `K: ker λ → Z¹_nab`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSequenceReport {
    pub aut_h: usize,
    pub ker_lambda: usize,
    pub z1: usize,
    pub aut_pairs: usize,
    pub image_lambda: usize,
    pub ker_wells: usize,
    pub lambda_homomorphism: bool,
    pub ker_lambda_is_image_h: bool,
    pub ker_wells_is_image_lambda: bool,
    pub inducible_iff_wells_vanishes: bool,
    pub k_bijective: bool,
    pub k_additive: bool,
    pub non_inducible: Vec<AutPair>,
}

impl ExactSequenceReport {
    pub fn exact(&self) -> bool {
        self.lambda_homomorphism
            && self.ker_lambda_is_image_h
            && self.ker_wells_is_image_lambda
            && self.inducible_iff_wells_vanishes
            && self.k_bijective
            && self.k_additive
    }
}

pub fn exact_sequence_report(e: &Extension, budget: u128) -> Result<ExactSequenceReport> {
    let auts = restricted_automorphisms(e, budget)?;
    let lambdas = auts.iter().map(|g| lambda_map(g, e)).collect::<Result<Vec<_>>>()?;
    let mut lambda_homomorphism = true;
    for (g1, l1) in auts.iter().zip(&lambdas) {
        for (g2, l2) in auts.iter().zip(&lambdas) {
            if lambda_map(&g1.compose(g2), e)? != l1.compose(l2) {
                lambda_homomorphism = false;
            }
        }
    }
    let kernel: Vec<&RestrictedAutomorphism> =
        auts.iter().zip(&lambdas).filter(|(_, l)| l.is_identity()).map(|(g, _)| g).collect();
    // H is the inclusion of ker λ; its image is the kernel itself, and it is injective.
    let ker_lambda_is_image_h = kernel.iter().all(|g| lambda_map(g, e).map(|l| l.is_identity()).unwrap_or(false));

    let c = extract_cocycle(e)?.cocycle;
    let z1 = enumerate_z1(&c, budget)?;
    let mut k_bijective = true;
    let mut images = Vec::new();
    for g in &kernel {
        let phi = k_map(g, e)?;
        if !z1.contains(&phi) || k_inverse(&phi, e)? != **g {
            k_bijective = false;
        }
        images.push(phi);
    }
    for phi in &z1 {
        if k_map(&k_inverse(phi, e)?, e)? != *phi {
            k_bijective = false;
        }
    }
    let mut distinct = images.clone();
    distinct.sort_by_key(|p| p.to_string());
    distinct.dedup();
    if distinct.len() != images.len() || images.len() != z1.len() {
        k_bijective = false;
    }
    let mut k_additive = true;
    for (g1, p1) in kernel.iter().zip(&images) {
        for (g2, p2) in kernel.iter().zip(&images) {
            if k_map(&g1.compose(g2), e)? != p1.add(p2) {
                k_additive = false;
            }
        }
    }

    let alphas = automorphisms(e.base(), budget)?;
    let betas = automorphisms(e.kernel(), budget)?;
    let mut image: Vec<&AutPair> = Vec::new();
    for l in &lambdas {
        if !image.contains(&l) {
            image.push(l);
        }
    }
    let mut ker_wells = 0;
    let mut ker_wells_is_image_lambda = true;
    let mut inducible_iff_wells_vanishes = true;
    let mut non_inducible = Vec::new();
    for a in &alphas {
        for b in &betas {
            let pair = AutPair { alpha: a.clone(), beta: b.clone() };
            let vanishes = wells_obstruction(&pair, e, budget)?.vanishes();
            let inducible = is_inducible(&pair, e, budget)?.is_some();
            if vanishes {
                ker_wells += 1;
            } else {
                non_inducible.push(pair.clone());
            }
            if vanishes != image.contains(&&pair) {
                ker_wells_is_image_lambda = false;
            }
            if vanishes != inducible {
                inducible_iff_wells_vanishes = false;
            }
        }
    }
    Ok(ExactSequenceReport {
        aut_h: auts.len(),
        ker_lambda: kernel.len(),
        z1: z1.len(),
        aut_pairs: alphas.len() * betas.len(),
        image_lambda: image.len(),
        ker_wells,
        lambda_homomorphism,
        ker_lambda_is_image_h,
        ker_wells_is_image_lambda,
        inducible_iff_wells_vanishes,
        k_bijective,
        k_additive,
        non_inducible,
    })
}

/// Outcome of the linear inducibility test for abelian extensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbelianVerdict {
    /// `β θ(x,y) ≠ θ(αx,αy) β` at the given `(x, y, a)`.
    Incompatible(Vec<usize>),
    Inducible(Matrix),
    NotInducible,
}

fn abelian_cocycle(e: &Extension) -> Result<NonAbelianCocycle> {
    if !is_abelian_ideal(&kernel_columns(e), e.hat())? {
        return Err(Error::NotAbelian);
    }
    let c = extract_cocycle(e)?.cocycle;
    debug_assert!(c.is_abelian_type());
    Ok(c)
}

/// First `(x, y, a)` where the pair fails compatibility with `θ`.
pub fn compatibility_failure(pair: &AutPair, c: &NonAbelianCocycle) -> Option<Vec<usize>> {
    let (field, m, n) = (c.field(), c.dim_g(), c.dim_h());
    let zero = Matrix::zeros(field, n, m);
    let ctx = Ctx::new(pair, &zero, c);
    crate::tensor::indices(&[m, m, n]).find(|w| {
        let lhs = pair.beta.apply(&c.th(&ctx.eg[w[0]], &ctx.eg[w[1]], &ctx.eh[w[2]]));
        lhs != c.th(&ctx.ax[w[0]], &ctx.ax[w[1]], &ctx.bx[w[2]])
    })
}

/// For abelian extensions the `ω` equation is linear in `φ`; this solves it
/// exactly over any field, after checking compatibility of the pair with `θ`.
pub fn abelian_inducible(pair: &AutPair, e: &Extension) -> Result<AbelianVerdict> {
    pair.check(e.base(), e.kernel())?;
    let c = abelian_cocycle(e)?;
    if let Some(w) = compatibility_failure(pair, &c) {
        return Ok(AbelianVerdict::Incompatible(w));
    }
    let (field, m, n) = (c.field(), c.dim_g(), c.dim_h());
    let zero = Matrix::zeros(field, n, m);
    let constant = |phi: &Matrix| -> Vector {
        let ctx = Ctx::new(pair, phi, &c);
        let mut v = Vec::new();
        for w in crate::tensor::indices(&[m, m, m]) {
            let (x, y, z) = (w[0], w[1], w[2]);
            let (ax, ay, az) = (&ctx.ax[x], &ctx.ax[y], &ctx.ax[z]);
            let (px, py, pz) = (&ctx.px[x], &ctx.px[y], &ctx.px[z]);
            let rhs = c.th(ax, az, py) - c.th(ay, az, px) - c.dth(ax, ay, pz) + ctx.phi_apply(&c.g().br_basis(x, y, z));
            v.extend(rhs.0);
        }
        Vector(v)
    };
    let target = {
        let ctx = Ctx::new(pair, &zero, &c);
        let mut v = Vec::new();
        for w in crate::tensor::indices(&[m, m, m]) {
            let lhs = pair.beta.apply(&c.omega().value_vec(&w)) - c.om(&ctx.ax[w[0]], &ctx.ax[w[1]], &ctx.ax[w[2]]);
            v.extend(lhs.0);
        }
        Vector(v)
    };
    let units: Vec<Vector> = (0..n * m)
        .map(|k| {
            let mut phi = zero.clone();
            phi.set(k / m, k % m, field.one());
            constant(&phi)
        })
        .collect();
    let system = Matrix::from_columns(field, target.len(), &units);
    match system.solve(&target)? {
        None => Ok(AbelianVerdict::NotInducible),
        Some(sol) => {
            let phi = Matrix::new(field, n, m, sol.0)?;
            if !iam_report(pair, &phi, &c)?.passed() {
                return Err(Error::Inconsistent("linear solution fails the inducibility equations".into()));
            }
            Ok(AbelianVerdict::Inducible(phi))
        }
    }
}

/// Whether `ω_{(α,β)} − ω` is a coboundary for the representation `(h, θ)`,
/// computed from the cochain complex rather than the inducibility equations.
pub fn abelian_class_test(pair: &AutPair, e: &Extension) -> Result<bool> {
    pair.check(e.base(), e.kernel())?;
    let c = abelian_cocycle(e)?;
    let rep = Representation::new(c.g().clone(), c.theta().clone())?;
    let transformed = transform_cocycle(pair, &c)?;
    let diff: Multilinear = transformed.omega().sub(c.omega());
    let cochain = YamagutiCochain::new(1, diff)?;
    Ok(coboundary_preimage(&cochain, &rep)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::DEFAULT_BUDGET;
    use crate::lts::direct_sum;
    use crate::nonabelian::{build_extension, verify_cocycle};
    use crate::samples::{abelian_omega_example, affine_line_lts, random_matrix, random_valid_cocycle};
    use crate::yamaguti::coboundary;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    fn swap(field: FieldSpec) -> Matrix {
        Matrix::from_i64(field, &[&[0, 1], &[1, 0]])
    }

    #[test]
    fn identity_pair_is_trivial_everywhere() {
        let e = build_extension(&abelian_omega_example(f2())).unwrap();
        let c = extract_cocycle(&e).unwrap().cocycle;
        let id = AutPair::identity(f2(), 2, 1);
        assert_eq!(transform_cocycle(&id, &c).unwrap(), c);
        let zero = Matrix::zeros(f2(), 1, 2);
        assert_eq!(is_inducible(&id, &e, DEFAULT_BUDGET).unwrap(), Some(zero.clone()));
        let w = wells_obstruction(&id, &e, DEFAULT_BUDGET).unwrap();
        assert_eq!(w.witness, Some(zero.clone()));
        let gamma = lift_pair(&id, &zero, &e).unwrap();
        assert!(gamma.matrix().is_identity());
        assert!(lambda_map(&gamma, &e).unwrap().is_identity());
        assert!(k_map(&gamma, &e).unwrap().is_zero());
        assert!(z1_membership(&zero, &c).unwrap());
        assert_eq!(abelian_inducible(&id, &e).unwrap(), AbelianVerdict::Inducible(zero));
    }

    #[test]
    fn swap_permutes_omega_and_is_not_inducible() {
        let f = f2();
        let c = abelian_omega_example(f);
        let pair = AutPair::new(swap(f), Matrix::identity(f, 1)).unwrap();
        let t = transform_cocycle(&pair, &c).unwrap();
        assert_eq!(t.omega().value(&[1, 0, 1]), c.omega().value(&[0, 1, 0]));
        assert!(verify_cocycle(&t).passed());

        let e = build_extension(&c).unwrap();
        assert_eq!(is_inducible(&pair, &e, DEFAULT_BUDGET).unwrap(), None);
        let w = wells_obstruction(&pair, &e, DEFAULT_BUDGET).unwrap();
        assert!(!w.vanishes());
        assert_eq!(abelian_inducible(&pair, &e).unwrap(), AbelianVerdict::NotInducible);
        assert!(!abelian_class_test(&pair, &e).unwrap());
        let bad = Matrix::zeros(f, 1, 2);
        match lift_pair(&pair, &bad, &e) {
            Err(Error::WitnessRejected { identity, .. }) => assert_eq!(identity, "iam_omega"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn scaling_divides_omega_by_eight() {
        let q = FieldSpec::Rationals;
        let c = abelian_omega_example(q);
        let pair = AutPair::new(Matrix::identity(q, 2).scale(&q.from_i64(2)), Matrix::identity(q, 1)).unwrap();
        let t = transform_cocycle(&pair, &c).unwrap();
        assert_eq!(*t.omega(), c.omega().scale(&q.fraction(1, 8).unwrap()));
        let e = build_extension(&c).unwrap();
        // βω − ω(α·, α·, α·) = −7ω, and φ cannot cancel it since g is abelian and θ = 0.
        assert_eq!(abelian_inducible(&pair, &e).unwrap(), AbelianVerdict::NotInducible);
        assert!(!abelian_class_test(&pair, &e).unwrap());

        // On a line, alternation leaves only ω = 0, so the scaling holds trivially and the pair lifts.
        let line = NonAbelianCocycle::zero(LieTripleSystem::zero(q, 1), LieTripleSystem::zero(q, 1));
        let mut omega = line.omega().clone();
        omega.set(&[0, 0, 0], 0, q.one());
        let bad = line.with_parts(omega, line.theta().clone(), line.rho().clone()).unwrap();
        assert!(!verify_cocycle(&bad).passed());
        let pair = AutPair::new(Matrix::identity(q, 1).scale(&q.from_i64(2)), Matrix::identity(q, 1)).unwrap();
        let t = transform_cocycle(&pair, &line).unwrap();
        assert_eq!(*t.omega(), line.omega().scale(&q.fraction(1, 8).unwrap()));
        let e = build_extension(&line).unwrap();
        assert!(matches!(abelian_inducible(&pair, &e).unwrap(), AbelianVerdict::Inducible(_)));
    }

    #[test]
    fn transform_is_a_left_action() {
        let f = FieldSpec::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let (g, h) = (LieTripleSystem::zero(f, 2), LieTripleSystem::zero(f, 2));
        let auts = automorphisms(&g, DEFAULT_BUDGET).unwrap();
        for k in 0..10 {
            let c = random_valid_cocycle(&g, &h, &mut rng);
            let p1 = AutPair::new(auts[k].clone(), auts[3 * k + 1].clone()).unwrap();
            let p2 = AutPair::new(auts[2 * k + 5].clone(), auts[k + 7].clone()).unwrap();
            let lhs = transform_cocycle(&p1.compose(&p2), &c).unwrap();
            let rhs = transform_cocycle(&p1, &transform_cocycle(&p2, &c).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            assert!(verify_cocycle(&lhs).passed());
        }
    }

    #[test]
    fn diagonal_gamma_on_direct_sum() {
        let f = f2();
        let (g, h) = (affine_line_lts(f), LieTripleSystem::zero(f, 1));
        let e = build_extension(&NonAbelianCocycle::zero(g.clone(), h.clone())).unwrap();
        assert_eq!(*e.hat(), direct_sum(&g, &h).unwrap());
        for alpha in automorphisms(&g, DEFAULT_BUDGET).unwrap() {
            let one = Matrix::identity(f, 1);
            let block = alpha.hstack(&Matrix::zeros(f, 2, 1)).vstack(&Matrix::zeros(f, 1, 2).hstack(&one));
            let gamma = RestrictedAutomorphism::new(block, &e).unwrap();
            assert_eq!(lambda_map(&gamma, &e).unwrap(), AutPair::new(alpha, one).unwrap());
        }
    }

    #[test]
    fn lifts_round_trip_and_verdicts_ignore_the_section() {
        let f = FieldSpec::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let c = abelian_omega_example(f);
        let e = build_extension(&c).unwrap();
        let auts = automorphisms(c.g(), DEFAULT_BUDGET).unwrap();
        let betas = automorphisms(c.h(), DEFAULT_BUDGET).unwrap();
        let mut inducible = 0;
        for a in &auts {
            for b in &betas {
                let pair = AutPair::new(a.clone(), b.clone()).unwrap();
                let found = is_inducible(&pair, &e, DEFAULT_BUDGET).unwrap();
                let vanishes = wells_obstruction(&pair, &e, DEFAULT_BUDGET).unwrap().vanishes();
                assert_eq!(found.is_some(), vanishes);
                let shifted = e.with_section(e.s().add(&e.i().mul(&random_matrix(f, 1, 2, &mut rng)))).unwrap();
                assert_eq!(is_inducible(&pair, &shifted, DEFAULT_BUDGET).unwrap().is_some(), vanishes);
                assert_eq!(wells_obstruction(&pair, &shifted, DEFAULT_BUDGET).unwrap().vanishes(), vanishes);
                if let Some(phi) = found {
                    inducible += 1;
                    let gamma = lift_pair(&pair, &phi, &e).unwrap();
                    assert_eq!(lambda_map(&gamma, &e).unwrap(), pair);
                    assert_eq!(lambda_map(&gamma, &shifted).unwrap(), pair);
                    assert!(wells_obstruction_via(&pair, &phi.mul(&pair.alpha().inverse().unwrap()), &e)
                        .unwrap()
                        .vanishes());
                }
            }
        }
        assert!(inducible > 0 && inducible < auts.len() * betas.len());
    }

    #[test]
    fn k_is_a_bijection_onto_z1() {
        let f = f2();
        let (g, h) = (LieTripleSystem::zero(f, 1), LieTripleSystem::zero(f, 1));
        let e = build_extension(&NonAbelianCocycle::zero(g, h)).unwrap();
        let c = extract_cocycle(&e).unwrap().cocycle;
        let z1 = enumerate_z1(&c, DEFAULT_BUDGET).unwrap();
        assert_eq!(z1.len(), 2);
        let auts = restricted_automorphisms(&e, DEFAULT_BUDGET).unwrap();
        let kernel: Vec<_> = auts.iter().filter(|g| lambda_map(g, &e).unwrap().is_identity()).collect();
        assert_eq!(kernel.len(), z1.len());
        for g in &kernel {
            let phi = k_map(g, &e).unwrap();
            assert!(z1.contains(&phi));
            assert_eq!(k_inverse(&phi, &e).unwrap(), **g);
        }
        for a in &kernel {
            for b in &kernel {
                assert_eq!(k_map(&a.compose(b), &e).unwrap(), k_map(a, &e).unwrap().add(&k_map(b, &e).unwrap()));
            }
        }
    }

    #[test]
    fn k_rejects_outside_the_domain() {
        let f = f2();
        let c = abelian_omega_example(f);
        let e = build_extension(&c).unwrap();
        let pair = AutPair::new(Matrix::from_i64(f, &[&[1, 1], &[0, 1]]), Matrix::identity(f, 1)).unwrap();
        if let Some(phi) = is_inducible(&pair, &e, DEFAULT_BUDGET).unwrap() {
            let gamma = lift_pair(&pair, &phi, &e).unwrap();
            assert_eq!(k_map(&gamma, &e), Err(Error::NotInKernel));
        }
        // h is abelian and θ = ρ = 0, so Z¹ is the set of φ with φ[x,y,z] = 0, which is everything here.
        assert_eq!(enumerate_z1(&c, DEFAULT_BUDGET).unwrap().len(), 4);
    }

    #[test]
    fn exact_sequences_over_f2() {
        let f = f2();
        let (g, h) = (LieTripleSystem::zero(f, 1), LieTripleSystem::zero(f, 1));
        let e = build_extension(&NonAbelianCocycle::zero(g, h)).unwrap();
        let r = exact_sequence_report(&e, DEFAULT_BUDGET).unwrap();
        assert!(r.exact());
        assert_eq!(r.aut_pairs, 1);
        assert_eq!(r.ker_wells, 1);
        assert_eq!(r.image_lambda, 1);
        assert_eq!(r.ker_lambda, r.z1);
        assert!(r.non_inducible.is_empty());

        let e = build_extension(&abelian_omega_example(f)).unwrap();
        let r = exact_sequence_report(&e, DEFAULT_BUDGET).unwrap();
        assert!(r.exact(), "{r:?}");
        assert_eq!(r.aut_pairs, 6);
        assert_eq!(r.ker_lambda, r.z1);
        assert_eq!(r.ker_wells, r.image_lambda);
        assert!(r.non_inducible.contains(&AutPair::new(swap(f), Matrix::identity(f, 1)).unwrap()));
    }

    #[test]
    fn abelian_z1_is_the_kernel_of_delta() {
        let f = FieldSpec::prime(3).unwrap();
        let g = affine_line_lts(f);
        let rep = Representation::regular(g.clone());
        let zero = NonAbelianCocycle::zero(g.clone(), LieTripleSystem::zero(f, 2));
        let c = zero.with_parts(zero.omega().clone(), rep.theta().clone(), zero.rho().clone()).unwrap();
        assert!(verify_cocycle(&c).passed());
        for phi in matrices(f, 2, 2, DEFAULT_BUDGET).unwrap() {
            let cochain = YamagutiCochain::new(0, Multilinear::from_fn(f, vec![2], 2, |w| phi.column(w[0]))).unwrap();
            let closed = coboundary(&cochain, &rep).unwrap().is_zero();
            assert_eq!(z1_membership(&phi, &c).unwrap(), closed);
        }
    }

    #[test]
    fn abelian_solver_matches_search_and_cohomology() {
        let f = f2();
        let g = affine_line_lts(f);
        let rep = Representation::regular(g.clone());
        let zero = NonAbelianCocycle::zero(g.clone(), LieTripleSystem::zero(f, 2));
        let c = zero.with_parts(zero.omega().clone(), rep.theta().clone(), zero.rho().clone()).unwrap();
        let e = build_extension(&c).unwrap();
        let auts = automorphisms(&g, DEFAULT_BUDGET).unwrap();
        let betas = invertible_matrices(f, 2, DEFAULT_BUDGET).unwrap();
        let mut incompatible = 0;
        for a in &auts {
            for b in &betas {
                let pair = AutPair::new(a.clone(), b.clone()).unwrap();
                let searched = is_inducible(&pair, &e, DEFAULT_BUDGET).unwrap();
                match abelian_inducible(&pair, &e).unwrap() {
                    AbelianVerdict::Incompatible(_) => {
                        incompatible += 1;
                        assert!(searched.is_none());
                    }
                    AbelianVerdict::Inducible(phi) => {
                        assert!(searched.is_some());
                        assert!(check_inducibility_witness(&pair, &phi, &e).unwrap());
                        assert!(abelian_class_test(&pair, &e).unwrap());
                    }
                    AbelianVerdict::NotInducible => {
                        assert!(searched.is_none());
                        assert!(!abelian_class_test(&pair, &e).unwrap());
                    }
                }
            }
        }
        assert!(incompatible > 0);
    }

    #[test]
    fn non_abelian_kernel_is_rejected_by_the_linear_solver() {
        let f = f2();
        let c = NonAbelianCocycle::zero(LieTripleSystem::zero(f, 1), affine_line_lts(f));
        let e = build_extension(&c).unwrap();
        let id = AutPair::identity(f, 1, 2);
        assert_eq!(abelian_inducible(&id, &e), Err(Error::NotAbelian));
    }
}
