//! One function per subcommand, each turning a parsed document into a verdict and report body.

use lts_core::deformation::{
    gauge_transform, graded_bracket, in_positive_subcomplex, lift_cocycle_to_mc, DgLie, GradedCochain,
};
use lts_core::lts::verify_lts;
use lts_core::nonabelian::{
    build_extension, cocycles_equivalent_via, equivalence_report, extract_cocycle, find_equivalence, verify_cocycle,
};
use lts_core::wells::{
    abelian_class_test, abelian_inducible, exact_sequence_report, iam_report, is_inducible, lift_pair,
    wells_obstruction, wells_obstruction_via, AbelianVerdict, AutPair,
};
use lts_core::yamaguti::{coboundary, cochain_space_basis, cohomology};
use lts_core::{AxiomReport, Extension, FieldSpec, Matrix, NonAbelianCocycle};
use serde_json::{json, Map, Value};

use crate::doc::{matrix_doc, Document};
use crate::{Command, Failure, Options};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    True,
    False,
    Found,
    None,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::True => "TRUE",
            Verdict::False => "FALSE",
            Verdict::Found => "FOUND",
            Verdict::None => "NONE",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass | Verdict::True | Verdict::Found => 0,
            Verdict::Fail | Verdict::False | Verdict::None => 1,
        }
    }

    fn pass(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    fn truth(ok: bool) -> Self {
        if ok {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    fn found(ok: bool) -> Self {
        if ok {
            Verdict::Found
        } else {
            Verdict::None
        }
    }
}

pub struct Done {
    pub verdict: Verdict,
    pub body: Map<String, Value>,
    pub summary: String,
    /// A document written by `--out` in place of the report.
    pub produced: Option<Document>,
}

type Run = Result<Done, Failure>;

struct Ctx<'a> {
    opts: &'a Options,
    doc: &'a Document,
    field: FieldSpec,
}

pub fn dispatch(command: &Command, opts: &Options, doc: &Document) -> Run {
    let field = doc.field_spec()?;
    let cx = Ctx { opts, doc, field };
    match command {
        Command::VerifyLts(_) => cx.verify_lts(),
        Command::VerifyRep(_) => cx.verify_rep(),
        Command::Cohomology(_) => cx.cohomology(),
        Command::VerifyCocycle(_) => cx.verify_cocycle(),
        Command::Extend(_) => cx.extend(),
        Command::Extract(_) => cx.extract(),
        Command::Equivalent(_) => cx.equivalent(),
        Command::McCheck(_) => cx.mc_check(),
        Command::Bracket(_) => cx.bracket(),
        Command::Gauge(_) => cx.gauge(),
        Command::Inducible(_) => cx.inducible(),
        Command::Wells(_) => cx.wells(),
        Command::ExactSeq(_) => cx.exact_seq(),
        Command::AbelianInducible(_) => cx.abelian_inducible(),
    }
}

/// The flag value, or the only key present, or a usage error.
fn pick<'a, V>(
    map: &'a std::collections::BTreeMap<String, V>,
    flag: Option<&'a str>,
    kind: &str,
    option: &str,
) -> Result<&'a str, Failure> {
    if let Some(name) = flag {
        return Ok(name);
    }
    let mut keys = map.keys();
    match (keys.next(), keys.next()) {
        (Some(k), None) => Ok(k),
        (None, _) => Err(Failure::usage(format!("the document has no {kind}"))),
        _ => Err(Failure::usage(format!(
            "the document has several {kind} entries; choose one with --{option} ({})",
            map.keys().cloned().collect::<Vec<_>>().join(", ")
        ))),
    }
}

fn required<'a>(value: &'a Option<String>, option: &str) -> Result<&'a str, Failure> {
    value.as_deref().ok_or_else(|| Failure::usage(format!("--{option} is required")))
}

fn checks_json(r: &AxiomReport) -> Value {
    Value::Array(
        r.checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed(), "witness": c.witness })).collect(),
    )
}

fn first_failure_json(r: &AxiomReport) -> Value {
    r.first_failure().map_or(Value::Null, |c| json!({ "name": c.name, "witness": c.witness }))
}

fn cocycle_json(c: &NonAbelianCocycle) -> Value {
    let mut d = Document::new(c.field());
    d.insert_cocycle("cocycle", "g", "h", c);
    let c = &d.cocycle["cocycle"];
    json!({ "omega": c.omega, "theta": c.theta, "rho": c.rho })
}

fn cochain_json(c: &GradedCochain, dim_g: usize) -> Value {
    let mut d = Document::new(c.field());
    d.insert_cochain("c", c, dim_g);
    serde_json::to_value(&d.cochains["c"]).expect("cochains serialize")
}

fn body(pairs: Vec<(&str, Value)>) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn done(verdict: Verdict, body: Map<String, Value>, summary: impl Into<String>) -> Run {
    Ok(Done { verdict, body, summary: summary.into(), produced: None })
}

impl Ctx<'_> {
    fn lts_name(&self) -> Result<&str, Failure> {
        pick(&self.doc.lts, self.opts.lts.as_deref(), "LTS", "lts")
    }

    fn rep_name(&self) -> Result<&str, Failure> {
        pick(&self.doc.rep, self.opts.rep.as_deref(), "representation", "rep")
    }

    fn cocycle_name(&self) -> Result<&str, Failure> {
        pick(&self.doc.cocycle, self.opts.cocycle.as_deref(), "cocycle", "cocycle")
    }

    fn extension(&self) -> Result<(String, Extension), Failure> {
        let name = pick(&self.doc.extension, self.opts.extension.as_deref(), "extension", "extension")?;
        let e = self.doc.extension_named(self.field, name, self.opts.section.as_deref())?;
        Ok((name.to_string(), e))
    }

    fn matrix(&self, value: &Option<String>, option: &str) -> Result<Matrix, Failure> {
        Ok(self.doc.matrix_named(self.field, required(value, option)?)?)
    }

    fn pair(&self) -> Result<AutPair, Failure> {
        let alpha = self.matrix(&self.opts.alpha, "alpha")?;
        let beta = self.matrix(&self.opts.beta, "beta")?;
        Ok(AutPair::new(alpha, beta)?)
    }

    /// A cocycle by name, or the cocycle an extension carries for `section` (its own when `None`).
    fn cocycle_or_extraction(
        &self,
        name: &str,
        section: Option<&str>,
    ) -> Result<(NonAbelianCocycle, &'static str), Failure> {
        if self.doc.cocycle.contains_key(name) {
            return Ok((self.doc.cocycle_named(self.field, name)?, "cocycle"));
        }
        if self.doc.extension.contains_key(name) {
            let e = self.doc.extension_named(self.field, name, section)?;
            return Ok((extract_cocycle(&e)?.cocycle, "extension"));
        }
        Err(Failure::usage(format!("no cocycle or extension named {name:?}")))
    }

    fn verify_lts(&self) -> Run {
        let name = self.lts_name()?;
        let t = self.doc.lts_named(self.field, name)?;
        let r = verify_lts(&t);
        let summary = match r.first_failure() {
            None => format!("{name}: {} axioms hold", r.checks.len()),
            Some(c) => format!("{name}: {} fails at {:?}", c.name, c.witness.as_deref().unwrap_or_default()),
        };
        let b = body(vec![
            ("lts", json!(name)),
            ("dim", json!(t.dim())),
            ("checks", checks_json(&r)),
            ("first_failure", first_failure_json(&r)),
        ]);
        done(Verdict::pass(r.passed()), b, summary)
    }

    fn verify_rep(&self) -> Run {
        let name = self.rep_name()?;
        let rep = self.doc.rep_named(self.field, name)?;
        let r = rep.verify();
        let b = body(vec![
            ("rep", json!(name)),
            ("dim_g", json!(rep.lts().dim())),
            ("dim_v", json!(rep.vdim())),
            ("checks", checks_json(&r)),
            ("first_failure", first_failure_json(&r)),
        ]);
        done(Verdict::pass(r.passed()), b, format!("{name}: {} identities checked", r.checks.len()))
    }

    fn cohomology(&self) -> Run {
        let degree = self.opts.degree.ok_or_else(|| Failure::usage("--degree is required"))?;
        if degree % 2 == 0 {
            return Err(Failure::usage(format!("degree {degree} is even; Yamaguti cohomology lives in odd degrees")));
        }
        let n = degree.div_ceil(2);
        let name = self.rep_name()?;
        let rep = self.doc.rep_named(self.field, name)?;
        let report = cohomology(n, &rep)?;
        let mut squares_to_zero = true;
        for c in cochain_space_basis(n - 1, &rep) {
            if !coboundary(&coboundary(&c, &rep)?, &rep)?.is_zero() {
                squares_to_zero = false;
                break;
            }
        }
        let b = body(vec![
            ("rep", json!(name)),
            ("degree", json!(degree)),
            ("dim_c", json!(report.dim_c)),
            ("dim_z", json!(report.dim_z)),
            ("dim_b", json!(report.dim_b)),
            ("dim_h", json!(report.dim_h)),
            ("delta_squared_zero", json!(squares_to_zero)),
        ]);
        let summary = format!("H^{degree} has dimension {}", report.dim_h);
        done(Verdict::pass(squares_to_zero), b, summary)
    }

    fn verify_cocycle(&self) -> Run {
        let name = self.cocycle_name()?;
        let c = self.doc.cocycle_named(self.field, name)?;
        let r = verify_cocycle(&c);
        let summary = match r.first_failure() {
            None => format!("{name}: {} identities hold", r.checks.len()),
            Some(f) => format!("{name}: {} fails at {:?}", f.name, f.witness.as_deref().unwrap_or_default()),
        };
        let b = body(vec![
            ("cocycle", json!(name)),
            ("dim_g", json!(c.dim_g())),
            ("dim_h", json!(c.dim_h())),
            ("checks", checks_json(&r)),
            ("first_failure", first_failure_json(&r)),
        ]);
        done(Verdict::pass(r.passed()), b, summary)
    }

    /// PASS when the extended bracket is an LTS; the report also says whether that agrees with the cocycle test.
    fn extend(&self) -> Run {
        let name = self.cocycle_name()?;
        let c = self.doc.cocycle_named(self.field, name)?;
        let e = build_extension(&c)?;
        let lts = verify_lts(e.hat());
        let cocycle_ok = verify_cocycle(&c).passed();
        let mut out = Document::new(self.field);
        out.insert_extension(name, &format!("{name}_hat"), &e);
        let b = body(vec![
            ("cocycle", json!(name)),
            ("dim", json!(e.hat().dim())),
            ("lts_checks", checks_json(&lts)),
            ("cocycle_passed", json!(cocycle_ok)),
            ("agrees", json!(cocycle_ok == lts.passed())),
            ("extension", serde_json::to_value(&out).expect("documents serialize")),
        ]);
        let summary = format!(
            "extension of dimension {}, cocycle test {}",
            e.hat().dim(),
            if cocycle_ok { "passes" } else { "fails" }
        );
        Ok(Done { verdict: Verdict::pass(lts.passed()), body: b, summary, produced: Some(out) })
    }

    /// PASS when the extracted triple is a cocycle and, with `--cocycle`, equals the named one.
    fn extract(&self) -> Run {
        let (name, e) = self.extension()?;
        let c = extract_cocycle(&e)?.cocycle;
        let r = verify_cocycle(&c);
        let expected = match &self.opts.cocycle {
            Some(n) => Some(self.doc.cocycle_named(self.field, n)?),
            None => None,
        };
        let matches = expected.as_ref().map(|x| *x == c);
        let mut out = Document::new(self.field);
        out.insert_cocycle(&name, "g", "h", &c);
        let b = body(vec![
            ("extension", json!(name)),
            ("section", json!(matrix_doc(e.s()))),
            ("cocycle", cocycle_json(&c)),
            ("checks", checks_json(&r)),
            ("matches", json!(matches)),
        ]);
        let ok = r.passed() && matches.unwrap_or(true);
        Ok(Done { verdict: Verdict::pass(ok), body: b, summary: format!("{name}: extracted"), produced: Some(out) })
    }

    fn equivalent(&self) -> Run {
        let left = required(&self.opts.left, "left")?;
        let right = required(&self.opts.right, "right")?;
        let (c1, k1) = self.cocycle_or_extraction(left, None)?;
        let (c2, k2) = self.cocycle_or_extraction(right, self.opts.section.as_deref())?;
        let mut b =
            body(vec![("left", json!({ "name": left, "kind": k1 })), ("right", json!({ "name": right, "kind": k2 }))]);
        if let (Some(phi), false) = (&self.opts.phi, self.opts.search) {
            let phi = self.doc.matrix_named(self.field, phi)?;
            let r = equivalence_report(&phi, &c1, &c2)?;
            let ok = cocycles_equivalent_via(&phi, &c1, &c2)?;
            b.insert("checks".into(), checks_json(&r));
            return done(Verdict::truth(ok), b, format!("{left} ~ {right} via the given φ: {ok}"));
        }
        let w = find_equivalence(&c1, &c2, self.opts.budget)?;
        b.insert("witness".into(), json!(w.as_ref().map(matrix_doc)));
        done(Verdict::found(w.is_some()), b, format!("{left} vs {right}: exhaustive search"))
    }

    fn mc_check(&self) -> Run {
        if self.opts.cochain.is_some() || (self.doc.cocycle.is_empty() && !self.doc.cochains.is_empty()) {
            let name = pick(&self.doc.cochains, self.opts.cochain.as_deref(), "cochain", "cochain")?;
            let (pi, _) = self.doc.cochain_named(self.field, name)?;
            if pi.degree() != 1 {
                return Err(Failure::usage(format!("{name} has degree {}, expected 1", pi.degree())));
            }
            let mc = DgLie::new(pi.clone()).is_ok();
            let square = graded_bracket(&pi, &pi)?.is_zero();
            let lts = verify_lts(&lts_core::LieTripleSystem::new(pi.table().clone())?).passed();
            let b = body(vec![
                ("cochain", json!(name)),
                ("maurer_cartan", json!(mc)),
                ("bracket_square_zero", json!(square)),
                ("lts_passed", json!(lts)),
                ("agrees", json!(mc == lts)),
            ]);
            return done(Verdict::truth(mc), b, format!("{name}: Maurer-Cartan {mc}, LTS {lts}"));
        }
        let name = self.cocycle_name()?;
        let c = self.doc.cocycle_named(self.field, name)?;
        let dg = DgLie::direct_sum(c.g(), c.h())?;
        let eta = lift_cocycle_to_mc(&c);
        let mc = dg.is_mc_element(&eta)?;
        let cocycle_ok = verify_cocycle(&c).passed();
        let b = body(vec![
            ("cocycle", json!(name)),
            ("positive", json!(in_positive_subcomplex(&eta, c.dim_g()))),
            ("maurer_cartan", json!(mc)),
            ("cocycle_passed", json!(cocycle_ok)),
            ("agrees", json!(mc == cocycle_ok)),
        ]);
        done(Verdict::truth(mc), b, format!("{name}: Maurer-Cartan {mc}, cocycle {cocycle_ok}"))
    }

    /// PASS when graded antisymmetry, and with `--third` graded Jacobi, hold on the inputs.
    fn bracket(&self) -> Run {
        let left = required(&self.opts.left, "left")?;
        let right = required(&self.opts.right, "right")?;
        let (f, m) = self.doc.cochain_named(self.field, left)?;
        let (g, _) = self.doc.cochain_named(self.field, right)?;
        let fg = graded_bracket(&f, &g)?;
        let gf = graded_bracket(&g, &f)?;
        let sign = if f.degree() * g.degree() % 2 == 0 { -self.field.one() } else { self.field.one() };
        let antisymmetric = fg == gf.scale(&sign);
        let mut b = body(vec![
            ("left", json!(left)),
            ("right", json!(right)),
            ("degree", json!(fg.degree())),
            ("result", cochain_json(&fg, m)),
            ("antisymmetric", json!(antisymmetric)),
        ]);
        let mut ok = antisymmetric;
        if let Some(third) = &self.opts.third {
            let (h, _) = self.doc.cochain_named(self.field, third)?;
            let lhs = graded_bracket(&f, &graded_bracket(&g, &h)?)?;
            let swap = if f.degree() * g.degree() % 2 == 1 { -self.field.one() } else { self.field.one() };
            let rhs = graded_bracket(&fg, &h)?.add(&graded_bracket(&g, &graded_bracket(&f, &h)?)?.scale(&swap));
            let jacobi = lhs == rhs;
            b.insert("jacobi".into(), json!(jacobi));
            ok &= jacobi;
        }
        let positive = in_positive_subcomplex(&f, m) && in_positive_subcomplex(&g, m);
        b.insert("inputs_positive".into(), json!(positive));
        b.insert("result_positive".into(), json!(in_positive_subcomplex(&fg, m)));
        let mut out = Document::new(self.field);
        out.insert_cochain(&format!("[{left},{right}]"), &fg, m);
        let summary = format!("bracket of degree {}", fg.degree());
        Ok(Done { verdict: Verdict::pass(ok), body: b, summary, produced: Some(out) })
    }

    /// PASS when `gauge(φ, lift(c)) = lift(c shifted by φ)`.
    fn gauge(&self) -> Run {
        let name = self.cocycle_name()?;
        let c = self.doc.cocycle_named(self.field, name)?;
        let phi = self.matrix(&self.opts.phi, "phi")?;
        let dg = DgLie::direct_sum(c.g(), c.h())?;
        let eta = lift_cocycle_to_mc(&c);
        let moved = gauge_transform(&dg, c.dim_g(), &GradedCochain::extend_by_zero(&phi), &eta)?;
        let shifted = c.shifted_by(&phi)?;
        let matches = moved == lift_cocycle_to_mc(&shifted);
        let b = body(vec![
            ("cocycle", json!(name)),
            ("maurer_cartan_before", json!(dg.is_mc_element(&eta)?)),
            ("maurer_cartan_after", json!(dg.is_mc_element(&moved)?)),
            ("matches_shift", json!(matches)),
            ("shifted", cocycle_json(&shifted)),
        ]);
        let mut out = Document::new(self.field);
        out.insert_cocycle(&format!("{name}_shifted"), "g", "h", &shifted);
        Ok(Done {
            verdict: Verdict::pass(matches),
            body: b,
            summary: format!("{name}: gauge matches shift {matches}"),
            produced: Some(out),
        })
    }

    fn inducible(&self) -> Run {
        let (name, e) = self.extension()?;
        let pair = self.pair()?;
        pair.check(e.base(), e.kernel())?;
        let mut b = body(vec![("extension", json!(name))]);
        if let (Some(phi), false) = (&self.opts.phi, self.opts.search) {
            let phi = self.doc.matrix_named(self.field, phi)?;
            let c = extract_cocycle(&e)?.cocycle;
            let r = iam_report(&pair, &phi, &c)?;
            b.insert("checks".into(), checks_json(&r));
            if r.passed() {
                let gamma = lift_pair(&pair, &phi, &e)?;
                b.insert("gamma".into(), json!(matrix_doc(gamma.matrix())));
            }
            return done(
                Verdict::truth(r.passed()),
                b,
                format!("{name}: witness {}", if r.passed() { "accepted" } else { "rejected" }),
            );
        }
        let found = is_inducible(&pair, &e, self.opts.budget)?;
        b.insert("witness".into(), json!(found.as_ref().map(matrix_doc)));
        if let Some(phi) = &found {
            b.insert("gamma".into(), json!(matrix_doc(lift_pair(&pair, phi, &e)?.matrix())));
        }
        done(Verdict::found(found.is_some()), b, format!("{name}: exhaustive search"))
    }

    /// TRUE when the obstruction vanishes.
    fn wells(&self) -> Run {
        let (name, e) = self.extension()?;
        let pair = self.pair()?;
        let w = match (&self.opts.phi, self.opts.search) {
            (Some(phi), false) => wells_obstruction_via(&pair, &self.doc.matrix_named(self.field, phi)?, &e)?,
            _ => wells_obstruction(&pair, &e, self.opts.budget)?,
        };
        let b = body(vec![
            ("extension", json!(name)),
            ("vanishes", json!(w.vanishes())),
            ("witness", json!(w.witness.as_ref().map(matrix_doc))),
            ("transformed", cocycle_json(&w.transformed)),
        ]);
        done(
            Verdict::truth(w.vanishes()),
            b,
            format!("{name}: obstruction {}", if w.vanishes() { "vanishes" } else { "does not vanish" }),
        )
    }

    fn exact_seq(&self) -> Run {
        let (name, e) = self.extension()?;
        let r = exact_sequence_report(&e, self.opts.budget)?;
        let pairs: Vec<Value> = r
            .non_inducible
            .iter()
            .map(|p| json!({ "alpha": matrix_doc(p.alpha()), "beta": matrix_doc(p.beta()) }))
            .collect();
        let b = body(vec![
            ("extension", json!(name)),
            ("aut_h", json!(r.aut_h)),
            ("ker_lambda", json!(r.ker_lambda)),
            ("z1", json!(r.z1)),
            ("aut_pairs", json!(r.aut_pairs)),
            ("image_lambda", json!(r.image_lambda)),
            ("ker_wells", json!(r.ker_wells)),
            ("lambda_homomorphism", json!(r.lambda_homomorphism)),
            ("ker_lambda_is_image_h", json!(r.ker_lambda_is_image_h)),
            ("ker_wells_is_image_lambda", json!(r.ker_wells_is_image_lambda)),
            ("inducible_iff_wells_vanishes", json!(r.inducible_iff_wells_vanishes)),
            ("k_bijective", json!(r.k_bijective)),
            ("k_additive", json!(r.k_additive)),
            ("non_inducible", Value::Array(pairs)),
        ]);
        let summary =
            format!("|Aut_h| = {}, |ker λ| = {}, |Z¹| = {}, |ker W| = {}", r.aut_h, r.ker_lambda, r.z1, r.ker_wells);
        done(Verdict::pass(r.exact()), b, summary)
    }

    /// FOUND with the solution φ; NONE when not inducible or when the pair is incompatible with θ.
    fn abelian_inducible(&self) -> Run {
        let (name, e) = self.extension()?;
        let pair = self.pair()?;
        let verdict = abelian_inducible(&pair, &e)?;
        let mut b = body(vec![("extension", json!(name))]);
        let found = match &verdict {
            AbelianVerdict::Incompatible(w) => {
                b.insert("reason".into(), json!("incompatible"));
                b.insert("witness".into(), json!(w));
                false
            }
            AbelianVerdict::NotInducible => {
                b.insert("reason".into(), json!("no solution"));
                false
            }
            AbelianVerdict::Inducible(phi) => {
                b.insert("phi".into(), json!(matrix_doc(phi)));
                true
            }
        };
        if !matches!(verdict, AbelianVerdict::Incompatible(_)) {
            let same_class = abelian_class_test(&pair, &e)?;
            b.insert("same_class".into(), json!(same_class));
            b.insert("agrees".into(), json!(same_class == found));
        }
        done(Verdict::found(found), b, format!("{name}: linear solve"))
    }
}
