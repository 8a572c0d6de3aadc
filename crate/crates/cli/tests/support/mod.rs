//! Deterministic generator for the committed corpus under `corpus/`, and helpers to drive the CLI.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use lts_cli::doc::{self, Document};
use lts_cli::Outcome;
use lts_core::deformation::GradedCochain;
use lts_core::enumerate::{invertible_matrices, matrices, DEFAULT_BUDGET};
use lts_core::lts::lts_from_lie_algebra;
use lts_core::nonabelian::{build_extension, enumerate_cocycles};
use lts_core::samples::{
    abelian_omega_example, affine_line_lts, corrupt_cocycle, heisenberg, random_graded_cochain, random_matrix,
    random_nonzero_scalar, random_scalar, random_valid_cocycle, sl2_lts,
};
use lts_core::yamaguti::cohomology;
use lts_core::{FieldSpec, LieTripleSystem, Matrix, Multilinear, NonAbelianCocycle, Representation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const FILES: [&str; 14] = [
    "sl2.json",
    "broken.json",
    "abelian2.json",
    "abelian2_f3.json",
    "axioms_q.json",
    "axioms_f3.json",
    "triples_f2.json",
    "triples_f3.json",
    "extensions_f2.json",
    "extensions_f3.json",
    "deformation_f3.json",
    "gauge_f2.json",
    "wells_f2.json",
    "abelian_f3.json",
];

pub const SECTIONS: usize = 20;

pub fn f2() -> FieldSpec {
    FieldSpec::prime(2).unwrap()
}

pub fn f3() -> FieldSpec {
    FieldSpec::prime(3).unwrap()
}

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus_path(name: &str) -> String {
    corpus_dir().join(name).to_string_lossy().into_owned()
}

/// The committed file, parsed.
pub fn load(name: &str) -> Document {
    let text = std::fs::read_to_string(corpus_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    doc::parse(&text).unwrap_or_else(|e| panic!("{name}: {e:?}"))
}

/// Runs the CLI in-process; `args` excludes the program name.
pub fn cli(args: &[&str]) -> Outcome {
    lts_cli::run_args(std::iter::once("lts").chain(args.iter().copied()))
}

/// Runs the built binary and returns its stdout and exit code.
pub fn binary(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_lts")).args(args).output().expect("the binary runs");
    (out.stdout, out.status.code().expect("the binary exits normally"))
}

pub fn report(o: &Outcome) -> serde_json::Value {
    serde_json::from_str(&o.report).expect("reports are JSON")
}

/// Every corpus document, keyed by file name, regenerated from fixed seeds.
pub fn generate() -> Vec<(&'static str, Document)> {
    let built: Vec<Document> = vec![
        sl2_doc(),
        broken_doc(),
        abelian2_doc(FieldSpec::Rationals),
        abelian2_doc(f3()),
        axioms_doc(FieldSpec::Rationals, 1),
        axioms_doc(f3(), 2),
        triples_doc(f2()),
        triples_doc(f3()),
        extensions_doc(f2()),
        extensions_doc(f3()),
        deformation_doc(),
        gauge_doc(),
        wells_doc(),
        abelian_doc(),
    ];
    FILES.into_iter().zip(built).collect()
}

fn sl2_doc() -> Document {
    let q = FieldSpec::Rationals;
    let mut d = Document::new(q);
    d.insert_rep("sl2_regular", "sl2", &Representation::regular(sl2_lts(q)));
    d
}

/// Alternation fails only at `[e₁, e₁, e₂] = e₀`.
fn broken_doc() -> Document {
    let q = FieldSpec::Rationals;
    let mut t = Multilinear::zeros(q, vec![3; 3], 3);
    t.set(&[1, 1, 2], 0, q.one());
    let mut d = Document::new(q);
    d.insert_lts("broken", &LieTripleSystem::new(t).unwrap());
    d
}

/// Abelian `g` of dimension 2 acting trivially on a line.
fn abelian2_doc(f: FieldSpec) -> Document {
    let mut d = Document::new(f);
    d.insert_rep("trivial", "abelian2", &Representation::zero(LieTripleSystem::zero(f, 2), 1));
    d
}

fn axiom_bases(f: FieldSpec) -> Vec<(String, LieTripleSystem)> {
    let mut out: Vec<(String, LieTripleSystem)> =
        (1..=4).map(|n| (format!("abelian{n}"), LieTripleSystem::zero(f, n))).collect();
    out.push(("heisenberg".into(), lts_from_lie_algebra(&heisenberg(f)).unwrap()));
    out.push(("sl2".into(), sl2_lts(f)));
    out
}

/// The standard examples plus twenty single-coefficient perturbations of them.
fn axioms_doc(f: FieldSpec, seed: u64) -> Document {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases = axiom_bases(f);
    let mut d = Document::new(f);
    for (name, t) in &bases {
        d.insert_lts(name, t);
    }
    for k in 0..20 {
        let (_, t) = &bases[1 + k % (bases.len() - 1)];
        let mut data = t.bracket().coefficients().to_vec();
        let pos = rng.gen_range(0..data.len());
        data[pos] += &random_nonzero_scalar(f, &mut rng);
        let b = Multilinear::from_coefficients(f, t.bracket().dims().to_vec(), t.dim(), data).unwrap();
        d.insert_lts(&format!("corrupt_{k:02}"), &LieTripleSystem::new(b).unwrap());
    }
    d
}

const SMALL: [&str; 3] = ["zero1", "zero2", "affine"];

fn small_lts(f: FieldSpec, k: usize) -> LieTripleSystem {
    match k {
        0 => LieTripleSystem::zero(f, 1),
        1 => LieTripleSystem::zero(f, 2),
        _ => affine_line_lts(f),
    }
}

pub struct Triple {
    pub name: String,
    pub g: &'static str,
    pub h: &'static str,
    pub cocycle: NonAbelianCocycle,
}

/// Twenty-five valid triples and twenty-five corrupted ones over `f`.
pub fn triples(f: FieldSpec) -> Vec<Triple> {
    let mut rng = ChaCha8Rng::seed_from_u64(10 + f.characteristic());
    let mut out = Vec::new();
    for valid in [true, false] {
        for k in 0..25 {
            let (kg, kh) = (rng.gen_range(0..3), rng.gen_range(0..3));
            let mut c = random_valid_cocycle(&small_lts(f, kg), &small_lts(f, kh), &mut rng);
            if !valid {
                c = corrupt_cocycle(&c, &mut rng);
            }
            let name = format!("{}_{k:02}", if valid { "valid" } else { "corrupt" });
            out.push(Triple { name, g: SMALL[kg], h: SMALL[kh], cocycle: c });
        }
    }
    out
}

fn triples_doc(f: FieldSpec) -> Document {
    let mut d = Document::new(f);
    for t in triples(f) {
        d.insert_cocycle(&t.name, t.g, t.h, &t.cocycle);
    }
    d
}

/// Section `s + iφ` for the standard frame of a `(m, n)` extension, with its shift `φ`.
pub fn section_names(m: usize, n: usize, j: usize) -> (String, String) {
    (format!("section_{m}x{n}_{j:02}"), format!("shift_{m}x{n}_{j:02}"))
}

/// The extensions of the valid triples with twenty alternative sections per shape.
fn extensions_doc(f: FieldSpec) -> Document {
    let mut rng = ChaCha8Rng::seed_from_u64(20 + f.characteristic());
    let mut d = Document::new(f);
    let mut shapes = std::collections::BTreeMap::new();
    for t in triples(f).into_iter().filter(|t| t.name.starts_with("valid")) {
        let e = build_extension(&t.cocycle).unwrap();
        let k = &t.name["valid_".len()..];
        d.insert_cocycle(&t.name, t.g, t.h, &t.cocycle);
        d.insert_extension(&format!("ext_{k}"), &format!("hat_{k}"), &e);
        shapes.entry((e.dim_g(), e.dim_h())).or_insert((e.s().clone(), e.i().clone()));
    }
    for (&(m, n), (s, i)) in &shapes {
        for j in 0..SECTIONS {
            let phi = random_matrix(f, n, m, &mut rng);
            let (section, shift) = section_names(m, n, j);
            d.insert_matrix(&section, &s.add(&i.mul(&phi)));
            d.insert_matrix(&shift, &phi);
        }
    }
    d
}

/// Degrees of the bracket pairs and Jacobi triples.
fn degrees(rng: &mut ChaCha8Rng, count: usize, total: usize) -> Vec<usize> {
    loop {
        let ds: Vec<usize> = (0..count).map(|_| rng.gen_range(0..=2)).collect();
        if ds.iter().sum::<usize>() <= total {
            return ds;
        }
    }
}

fn deformation_doc() -> Document {
    let f = f3();
    let mut rng = ChaCha8Rng::seed_from_u64(30);
    let mut d = Document::new(f);
    for k in 0..100 {
        let dim = rng.gen_range(1..=2);
        let ds = degrees(&mut rng, 2, 4);
        for (side, &deg) in ["l", "r"].iter().zip(&ds) {
            let c = random_graded_cochain(f, deg, dim, &mut rng);
            d.insert_cochain(&format!("pair_{k:03}_{side}"), &c, 1);
        }
    }
    for k in 0..50 {
        let dim = rng.gen_range(1..=2);
        let ds = degrees(&mut rng, 3, 4);
        for (side, &deg) in ["a", "b", "c"].iter().zip(&ds) {
            let c = random_graded_cochain(f, deg, dim, &mut rng);
            d.insert_cochain(&format!("jacobi_{k:02}_{side}"), &c, 1);
        }
    }
    for k in 0..50 {
        let pi = match k % 5 {
            0 => random_graded_cochain(f, 1, 2, &mut rng),
            1 => GradedCochain::from_bracket(&affine_line_lts(f)).unwrap(),
            2 => GradedCochain::from_bracket(&sl2_lts(f)).unwrap(),
            3 => GradedCochain::from_bracket(&sl2_lts(f)).unwrap().add(&random_graded_cochain(f, 1, 3, &mut rng)),
            _ => GradedCochain::from_bracket(&LieTripleSystem::zero(f, 2)).unwrap(),
        };
        d.insert_cochain(&format!("pi_{k:02}"), &pi, pi.dim());
    }
    d
}

fn gauge_doc() -> Document {
    let f = f2();
    let (g, h) = (LieTripleSystem::zero(f, 1), LieTripleSystem::zero(f, 1));
    let mut d = Document::new(f);
    for (k, c) in enumerate_cocycles(&g, &h, DEFAULT_BUDGET).unwrap().iter().enumerate() {
        d.insert_cocycle(&format!("c_{k:02}"), "g", "h", c);
    }
    for (k, phi) in matrices(f, 1, 1, DEFAULT_BUDGET).unwrap().enumerate() {
        d.insert_matrix(&format!("phi_{k}"), &phi);
    }
    d
}

/// Every `(1, 1)` extension over F₂ and one with a two-dimensional base.
fn wells_doc() -> Document {
    let f = f2();
    let (g, h) = (LieTripleSystem::zero(f, 1), LieTripleSystem::zero(f, 1));
    let mut d = Document::new(f);
    for (k, c) in enumerate_cocycles(&g, &h, DEFAULT_BUDGET).unwrap().iter().enumerate() {
        d.insert_extension(&format!("ext_{k:02}"), &format!("hat_{k:02}"), &build_extension(c).unwrap());
    }
    d.insert_extension("ext_plane", "hat_plane", &build_extension(&abelian_omega_example(f)).unwrap());
    for (k, a) in invertible_matrices(f, 2, DEFAULT_BUDGET).unwrap().iter().enumerate() {
        d.insert_matrix(&format!("gl2_{k}"), a);
    }
    d.insert_matrix("id1", &Matrix::identity(f, 1));
    d
}

/// A random `ω` in the 3-cocycles of `rep`, with `θ` from `rep` and `ρ = 0`, moved by a random `φ`.
fn abelian_cocycle(rep: &Representation, rng: &mut ChaCha8Rng) -> NonAbelianCocycle {
    let f = rep.field();
    let (m, n) = (rep.lts().dim(), rep.vdim());
    let mut omega = Multilinear::zeros(f, vec![m; 3], n);
    for z in cohomology(2, rep).unwrap().z_basis {
        omega = omega.add(&z.table().scale(&random_scalar(f, rng)));
    }
    let rho = Multilinear::zeros(f, vec![m, n, n], n);
    let c = NonAbelianCocycle::new(rep.lts().clone(), LieTripleSystem::zero(f, n), omega, rep.theta().clone(), rho)
        .unwrap();
    c.shifted_by(&random_matrix(f, n, m, rng)).unwrap()
}

pub const ABELIAN_MATRICES: [&str; 6] = ["id_1", "neg_1", "id_2", "neg_2", "swap_2", "diag_2"];

/// Twenty abelian extensions over F₃: trivial and non-trivial actions on one- and two-dimensional kernels.
fn abelian_doc() -> Document {
    let f = f3();
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    let reps = [
        ("plane", Representation::zero(LieTripleSystem::zero(f, 2), 1)),
        ("affine", Representation::zero(affine_line_lts(f), 1)),
        ("affine", Representation::regular(affine_line_lts(f))),
    ];
    let mut d = Document::new(f);
    for k in 0..20 {
        let (base, rep) = &reps[[0, 0, 0, 1, 1, 2, 2][k % 7]];
        let c = abelian_cocycle(rep, &mut rng);
        d.insert_lts(base, rep.lts());
        d.insert_extension(&format!("ext_{k:02}"), &format!("hat_{k:02}"), &build_extension(&c).unwrap());
    }
    let m = |rows: &[&[i64]]| Matrix::from_i64(f, rows);
    let mats = [
        m(&[&[1]]),
        m(&[&[-1]]),
        m(&[&[1, 0], &[0, 1]]),
        m(&[&[-1, 0], &[0, -1]]),
        m(&[&[0, 1], &[1, 0]]),
        m(&[&[1, 0], &[0, -1]]),
    ];
    for (name, mat) in ABELIAN_MATRICES.iter().zip(mats) {
        d.insert_matrix(name, &mat);
    }
    d
}
