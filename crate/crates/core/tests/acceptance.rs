//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines always reach stdout.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_traits::Zero;

use wreath_core::actions::{
    bernoulli_t, sigma_apply, verify_formal_action, BernoulliCoeffs, FormalAction,
};
use wreath_core::algebra::LieAlgebra;
use wreath_core::extensions::{kk_component, verify_kk, KkEmbedding};
use wreath_core::format::{fixtures, load_algebra, load_extension};
use wreath_core::lie_series::bracket_s;
use wreath_core::poly::{FormalSeries, MultiIndex};
use wreath_core::random::Sampler;
use wreath_core::rational::{factorial, Rational};
use wreath_core::wreath::WreathProduct;
use wreath_core::Vector;

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rat(n: i64, d: i64) -> Rational {
    wreath_core::rational::rat(n, d)
}

/// 1. Bernoulli coefficients against the recurrence oracle and the defining identity.
fn bernoulli() -> Outcome {
    let t = bernoulli_t(12);
    let oracle = bernoulli_oracle(12);
    ensure(t.as_slice() == oracle.as_slice(), || {
        format!("bernoulli_t(12) = {:?}, oracle {:?}", t.as_slice(), oracle)
    })?;
    ensure(t.get(0) == &rat(1, 1) && t.get(1) == &rat(1, 2), || {
        "t_0, t_1 ≠ 1, 1/2".into()
    })?;
    for n in (3..=12).step_by(2) {
        ensure(t.get(n).is_zero(), || format!("t_{n} ≠ 0"))?;
    }
    // coefficient of T^k in G(T)(e^T − 1) against Te^T, k = 0..=13
    for k in 0..=13usize {
        let mut lhs = Rational::zero();
        for j in 0..k {
            lhs += t.get(j) / factorial(k - j);
        }
        let rhs = if k == 0 {
            Rational::zero()
        } else {
            factorial(k - 1).recip()
        };
        ensure(lhs == rhs, || format!("generating identity fails at T^{k}"))?;
    }
    Ok("13 coefficients match the oracle; identity holds through T^13".into())
}

/// 2. polarize agrees with the slot-enumeration oracle; kernel perturbations are invisible.
fn symmetrization() -> Outcome {
    let mut rng = Sampler::new(2);
    let mut perturbed = 0;
    for trial in 0..100 {
        let dim = 1 + rng.below(3);
        let tgt = 1 + rng.below(2);
        let arity = 1 + rng.below(4);
        let u = rng.tensor(dim, tgt, arity);
        let r = 1 + rng.below(3);
        let z: Vec<Vector> = (0..r).map(|_| rng.vector(dim)).collect();
        let mut p = vec![0i64; r];
        for _ in 0..arity {
            p[rng.below(r)] += 1;
        }
        let f = u.to_homogeneous();
        let fast = f.polarize(&z, &p).map_err(|e| e.to_string())?;
        let slow = u.polarize_oracle(&z, &p).map_err(|e| e.to_string())?;
        ensure(fast == slow, || {
            format!("trial {trial}: polarize {fast} ≠ oracle {slow}")
        })?;
        if arity >= 2 {
            perturbed += 1;
            let v = u.add(&antisymmetric_perturbation(&rng.tensor(dim, tgt, arity)));
            ensure(v.to_homogeneous() == f, || {
                format!("trial {trial}: perturbation changed u(x,…,x)")
            })?;
            let pert = v.polarize_oracle(&z, &p).map_err(|e| e.to_string())?;
            ensure(pert == slow, || {
                format!("trial {trial}: perturbation changed ũ(z;p)")
            })?;
        }
    }
    Ok(format!(
        "100 trials, {perturbed} with a kernel perturbation"
    ))
}

/// 3. Jacobi identity in S(X) on certified components.
fn s_jacobi() -> Outcome {
    let mut rng = Sampler::new(3);
    for trial in 0..50 {
        let dim = 1 + rng.below(3);
        let [x, y, z] = [(); 3].map(|_| rng.series(dim, dim, 5, 0.4));
        let j = jacobi_s(&x, &y, &z);
        ensure(j.valid_through() == 3, || {
            format!(
                "trial {trial}: cyclic sum certified through {}",
                j.valid_through()
            )
        })?;
        ensure(vanishes_through(&j, 3), || {
            format!("trial {trial}: cyclic sum nonzero")
        })?;
    }
    Ok("50 triples, degrees 0..=3".into())
}

/// 4. A[[Y]]: antisymmetry, Jacobi, and degree additivity.
fn pointwise_bracket() -> Outcome {
    let mut rng = Sampler::new(4);
    let algebras = small_algebras(3);
    for trial in 0..50 {
        let g = &algebras[rng.below(algebras.len())];
        let y = 1 + rng.below(2);
        let n = 4;
        let [f, h, k] = [(); 3].map(|_| rng.series(y, g.dim(), n, 0.5));
        let fh = f.pointwise_bracket(&h, g).map_err(|e| e.to_string())?;
        let hf = h.pointwise_bracket(&f, g).map_err(|e| e.to_string())?;
        ensure(fh.valid_through() == n as isize, || {
            format!("trial {trial}: validity {}", fh.valid_through())
        })?;
        ensure(fh.add(&hf).unwrap().is_zero(), || {
            format!("trial {trial}: antisymmetry fails over {}", g)
        })?;
        let j = jacobi_pointwise(&f, &h, &k, g);
        ensure(vanishes_through(&j, n), || {
            format!("trial {trial}: Jacobi fails over {}", g)
        })?;

        let (dn, dr) = (rng.below(3), rng.below(3));
        let fn_ = FormalSeries::from_homogeneous(rng.homogeneous(y, g.dim(), dn, 0.7), n);
        let gr = FormalSeries::from_homogeneous(rng.homogeneous(y, g.dim(), dr, 0.7), n);
        let br = fn_.pointwise_bracket(&gr, g).map_err(|e| e.to_string())?;
        for c in br.components() {
            ensure(c.degree() == dn + dr || c.is_zero(), || {
                format!(
                    "trial {trial}: [A[Y]_{dn}, A[Y]_{dr}] has a degree-{} part",
                    c.degree()
                )
            })?;
            ensure(c.terms().all(|(m, _)| m.degree() == c.degree()), || {
                "monomial outside its degree".into()
            })?;
        }
    }
    Ok("50 triples over abelian, affine, Heisenberg, sl2, solvable3".into())
}

/// 5. The fundamental action is a homomorphism; a corrupted t_1 is caught.
fn fundamental_action() -> Outcome {
    let mut names = Vec::new();
    for (name, text) in [
        ("abelian2.alg", fixtures::ABELIAN2),
        ("heisenberg.alg", fixtures::HEISENBERG),
        ("sl2.alg", fixtures::SL2),
        ("solvable2.alg", fixtures::SOLVABLE2),
    ] {
        let g = load_algebra(text).map_err(|e| format!("{name}: {e}"))?;
        let action = FormalAction::fundamental(&g, 5).map_err(|e| e.to_string())?;
        let report = verify_formal_action(&action, 4).map_err(|e| e.to_string())?;
        ensure(report.passed(), || {
            format!(
                "{name}: fails at degree {:?}",
                report.first_failing_degree()
            )
        })?;
        names.push(name);
    }
    let mut coeffs = bernoulli_t(5).as_slice().to_vec();
    coeffs[1] = rat(1, 1);
    let mutant_t = BernoulliCoeffs::from_coefficients(coeffs).map_err(|e| e.to_string())?;
    let mutant = FormalAction::fundamental_with(&LieAlgebra::heisenberg(), &mutant_t)
        .map_err(|e| e.to_string())?;
    let report = verify_formal_action(&mutant, 1).map_err(|e| e.to_string())?;
    ensure(!report.passed(), || {
        "mutant with t_1 = 1 passes a check through degree 1".into()
    })?;
    Ok(format!(
        "{} pass through degree 4; t_1 = 1 mutant on heisenberg rejected by the degree-1 check (first mismatch at degree {})",
        names.join(", "),
        report.first_failing_degree().unwrap_or_default()
    ))
}

/// 6. Leibniz rule over the pointwise bracket, and σ: B → Der(A[[Y]]) is a homomorphism.
fn derivations() -> Outcome {
    let mut rng = Sampler::new(6);
    let algebras = small_algebras(3);
    let n = 4;
    for trial in 0..50 {
        let a = &algebras[rng.below(algebras.len())];
        let b = &algebras[rng.below(algebras.len())];
        let y = b.dim();

        let xi = rng.series(y, y, n, 0.4);
        let f = rng.series(y, a.dim(), n, 0.5);
        let g = rng.series(y, a.dim(), n, 0.5);
        let br = |p: &FormalSeries, q: &FormalSeries| p.pointwise_bracket(q, a).unwrap();
        let lhs = sigma_apply(&xi, &br(&f, &g)).unwrap();
        let rhs = br(&sigma_apply(&xi, &f).unwrap(), &g)
            .add(&br(&f, &sigma_apply(&xi, &g).unwrap()))
            .unwrap();
        let diff = lhs
            .differing_degrees(&rhs, n - 1)
            .map_err(|e| e.to_string())?;
        ensure(diff.is_empty(), || {
            format!("trial {trial}: Leibniz fails at degrees {diff:?}")
        })?;

        let action = FormalAction::fundamental(b, n).map_err(|e| e.to_string())?;
        let (b1, b2) = (rng.sparse_vector(y), rng.sparse_vector(y));
        let d1 = action.apply(&b1).unwrap();
        let d2 = action.apply(&b2).unwrap();
        let d12 = action.apply(&b.bracket(&b1, &b2).unwrap()).unwrap();
        let lhs = sigma_apply(&d12, &f).unwrap();
        let rhs = sigma_apply(&d1, &sigma_apply(&d2, &f).unwrap())
            .unwrap()
            .sub(&sigma_apply(&d2, &sigma_apply(&d1, &f).unwrap()).unwrap())
            .unwrap();
        let diff = lhs
            .differing_degrees(&rhs, n - 2)
            .map_err(|e| e.to_string())?;
        ensure(diff.is_empty(), || {
            format!(
                "trial {trial}: σ([b,b']) ≠ [σ(b),σ(b')] over A = {a}, B = {b} at degrees {diff:?}"
            )
        })?;
    }
    Ok("50 instances of each identity".into())
}

/// 7. Jacobi identity in W(A, B) on certified components.
fn wreath_jacobi_criterion() -> Outcome {
    let n = 4;
    let setups = [
        (
            "(Q, Q^2)",
            LieAlgebra::abelian("line", &["a"]),
            LieAlgebra::abelian("plane", &["b1", "b2"]),
        ),
        (
            "(span(e3), heisenberg/center)",
            LieAlgebra::abelian("center", &["e3"]),
            LieAlgebra::abelian("quotient", &["e1", "e2"]),
        ),
        (
            "(heisenberg, solvable2)",
            LieAlgebra::heisenberg(),
            LieAlgebra::affine_line(),
        ),
    ];
    let mut rng = Sampler::new(7);
    for (label, a, b) in setups.iter() {
        let w = WreathProduct::fundamental(a.clone(), b.clone(), n).map_err(|e| e.to_string())?;
        for trial in 0..30 {
            let [x, y, z] = [(); 3].map(|_| random_element(&w, &mut rng, 0.5));
            let xy = w.bracket(&x, &y).unwrap();
            let yx = w.bracket(&y, &x).unwrap();
            ensure(
                xy.series.add(&yx.series).unwrap().is_zero() && (&xy.point + &yx.point).is_zero(),
                || format!("{label} trial {trial}: antisymmetry fails"),
            )?;
            let j = wreath_jacobi(&w, &x, &y, &z);
            ensure(
                vanishes_through(&j.series, n - 2) && j.point.is_zero(),
                || format!("{label} trial {trial}: cyclic sum nonzero"),
            )?;
        }
    }
    Ok(
        "30 triples each over (Q, Q^2), (span(e3), Q^2) and (heisenberg, solvable2), degrees 0..=2"
            .into(),
    )
}

/// 8. The triangular action is a homomorphism W → S(X × Y).
fn triangular() -> Outcome {
    let n = 4;
    let setups = [
        (
            LieAlgebra::abelian("center", &["e3"]),
            LieAlgebra::abelian("plane", &["e1", "e2"]),
        ),
        (LieAlgebra::affine_line(), LieAlgebra::affine_line()),
        (
            LieAlgebra::abelian("plane", &["u", "v"]),
            LieAlgebra::affine_line(),
        ),
    ];
    let mut rng = Sampler::new(8);
    let mut pairs = 0;
    for (a, b) in setups.iter() {
        let w = WreathProduct::fundamental(a.clone(), b.clone(), n).map_err(|e| e.to_string())?;
        let d = FormalAction::fundamental(a, n).map_err(|e| e.to_string())?;
        for trial in 0..20 {
            let x = random_element(&w, &mut rng, 0.5);
            let y = random_element(&w, &mut rng, 0.5);
            let lhs = w
                .triangular_action(&d, &w.bracket(&x, &y).unwrap())
                .unwrap();
            let rhs = bracket_s(
                &w.triangular_action(&d, &x).unwrap(),
                &w.triangular_action(&d, &y).unwrap(),
            )
            .unwrap();
            let through = (n - 1).min(lhs.valid_through().min(rhs.valid_through()).max(0) as usize);
            ensure(through == n - 1, || {
                format!("only certified through {through}")
            })?;
            let diff = lhs
                .differing_degrees(&rhs, through)
                .map_err(|e| e.to_string())?;
            ensure(diff.is_empty(), || {
                format!(
                    "A = {a}, B = {b}, trial {trial}: Δ_[w,w'] ≠ [Δ_w, Δ_w'] at degrees {diff:?}"
                )
            })?;
            pairs += 1;
        }
    }
    Ok(format!(
        "{pairs} pairs (20 per setup, dim X, dim Y ≤ 2), degrees 0..=3"
    ))
}

/// 9. Kaloujnine-Krasner: homomorphism, injectivity, Heisenberg closed form.
fn kaloujnine_krasner() -> Outcome {
    let n = 4;
    let mut notes = Vec::new();
    for (name, text) in [
        ("heisenberg-center.ext", fixtures::HEISENBERG_CENTER),
        ("affine-line.ext", fixtures::AFFINE_LINE),
    ] {
        let (ext, s) = load_extension(text).map_err(|e| format!("{name}: {e}"))?;
        let r = verify_kk(&ext, &s, n, 20, 9).map_err(|e| e.to_string())?;
        ensure(r.checked_through == 3, || {
            format!("{name}: checked through {}", r.checked_through)
        })?;
        ensure(r.homomorphism_passed(), || {
            format!("{name}: homomorphism fails")
        })?;
        ensure(r.injectivity_passed(), || {
            format!("{name}: rank {} < {}", r.injectivity_rank, r.dim_c)
        })?;
        notes.push(format!(
            "{name}: {} pairs, rank {}",
            r.pairs.len(),
            r.injectivity_rank
        ));
    }

    let (ext, s) = load_extension(fixtures::HEISENBERG_CENTER).unwrap();
    let kk = KkEmbedding::new(&ext, &s, n).unwrap();
    let mut rng = Sampler::new(90);
    let mut cs: Vec<Vector> = (0..3).map(|i| Vector::unit(3, i)).collect();
    cs.extend((0..10).map(|_| rng.vector(3)));
    for c in &cs {
        let h0 = kk.component(c, 0).unwrap();
        ensure(
            h0.eval(&Vector::zeros(2)).unwrap() == Vector(vec![c[2].clone()]),
            || format!("h_0 at c = {c}"),
        )?;
        // ½(y1 c2 − y2 c1) e3
        let expected_h1 = [
            (MultiIndex::new(vec![1, 0]), Vector(vec![&c[1] * rat(1, 2)])),
            (
                MultiIndex::new(vec![0, 1]),
                Vector(vec![-(&c[0] * rat(1, 2))]),
            ),
        ];
        let h1 = kk.component(c, 1).unwrap();
        let want = wreath_core::HomogeneousMap::from_terms(2, 1, 1, expected_h1).unwrap();
        ensure(h1 == want, || format!("h_1 at c = {c}"))?;
        for m in 2..=n {
            ensure(kk_component(&ext, &s, c, m).unwrap().is_zero(), || {
                format!("h_{m} ≠ 0 at c = {c}")
            })?;
        }
    }
    notes.push(format!("closed form on {} points", cs.len()));
    Ok(notes.join("; "))
}

/// 10. CLI: byte-identical structured output across runs; golden files.
fn cli_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_wreath");
    let run = |args: &[&str]| -> Result<(i32, String), String> {
        let out = Command::new(bin)
            .args(args)
            .output()
            .map_err(|e| e.to_string())?;
        Ok((
            out.status.code().unwrap_or(-1),
            String::from_utf8_lossy(&out.stdout).into_owned(),
        ))
    };
    let args = [
        "verify-all",
        "--format",
        "structured",
        "--seed",
        "11",
        "--trials",
        "5",
        "-N",
        "4",
    ];
    let (c1, first) = run(&args)?;
    let (c2, second) = run(&args)?;
    ensure(c1 == 0 && c2 == 0, || {
        format!("verify-all exit codes {c1}, {c2}")
    })?;
    ensure(first == second, || {
        "verify-all structured output differs between runs".into()
    })?;
    ensure(first.contains("\"schema_version\": 1"), || {
        "missing schema_version".into()
    })?;

    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (file, args) in [
        ("bernoulli-6.txt", vec!["bernoulli", "6"]),
        (
            "kk-embed-heisenberg.txt",
            vec![
                "kk-embed",
                "heisenberg-center.ext",
                "--element",
                "1,0,0",
                "-N",
                "3",
            ],
        ),
        (
            "kk-embed-heisenberg.json",
            vec![
                "kk-embed",
                "heisenberg-center.ext",
                "--element",
                "1,2,3",
                "-N",
                "3",
                "--format",
                "structured",
            ],
        ),
    ] {
        let expected =
            std::fs::read_to_string(golden.join(file)).map_err(|e| format!("{file}: {e}"))?;
        let (code, out) = run(&args)?;
        ensure(code == 0 && out == expected, || {
            format!("{file}: output differs from golden file")
        })?;
    }
    Ok(format!(
        "verify-all ({} bytes) identical across runs; 3 golden files match",
        first.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Bernoulli coefficients", bernoulli),
        ("symmetrization well-defined", symmetrization),
        ("S(X) Jacobi up to truncation", s_jacobi),
        ("A[[Y]] bracket structure", pointwise_bracket),
        ("fundamental action homomorphism", fundamental_action),
        ("σ lands in derivations", derivations),
        ("wreath bracket Jacobi", wreath_jacobi_criterion),
        ("triangular action homomorphism", triangular),
        ("Kaloujnine-Krasner embedding", kaloujnine_krasner),
        ("CLI determinism and golden files", cli_determinism),
    ];
    let mut failures = 0;
    let start = Instant::now();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of 10 criteria passed in {:.1}s",
        10 - failures,
        start.elapsed().as_secs_f64()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
