//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::Command;
use std::time::{Duration, Instant};

use knotquat::affine::{affine_ideal, cocycle_of_word, cocycle_via_fox, normal_form_va, normal_form_vb, ShiftSign};
use knotquat::classify::{classify, embed_2x2, so_matrix_pair, Region, Tolerances};
use knotquat::numerics::{figure_eight_discriminant_sign, ideal_residual, sample_variety};
use knotquat::polyalg::{groebner, parse_rational, Ideal, MonomialOrder, Poly};
use knotquat::presentation::{figure_eight, parse_word, trefoil, Letter};
use knotquat::quatsym::{conj_action, gram_matrix, left_mult, left_mult_basis, right_mult, right_mult_basis, rotation_matrix};
use knotquat::variety::{c_ideal, to_trace_coords};
use knotquat::{AlgebraParams, Presentation, Word};
use knotquat_cli::verify::sweep_points;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn c(k: i64) -> Poly {
    Poly::constant(k)
}

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn timed<T>(limit: Duration, f: impl FnOnce() -> T) -> Result<(T, Duration), String> {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    check(took < limit, format!("took {took:?}, limit {limit:?}"))?;
    Ok((out, took))
}

fn run_cli(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_knotquat"))
        .args(args)
        .output()
        .map_err(|e| format!("cannot run binary: {e}"))?;
    check(out.status.success(), format!("{args:?} exited with {:?}", out.status.code()))?;
    Ok(String::from_utf8_lossy(&out.stdout).into_owned())
}

fn criterion_1() -> Outcome {
    let p = Presentation::balanced(parse_word("aba").unwrap(), parse_word("bab").unwrap());
    let (ci, took) = timed(Duration::from_millis(100), || c_ideal(&p))?;
    let gen = c(2) * Poly::x().pow(2) - c(2) * Poly::y() - c(1);
    let raw = [Poly::zero(), c(-1) + c(2) * Poly::x().pow(2) - c(2) * Poly::y(), c(1) - c(2) * Poly::x().pow(2) + c(2) * Poly::y(), Poly::zero()];
    check(ci.raw == raw, format!("raw vector {:?}", ci.raw))?;
    check(ci.simplified.gens() == [gen], format!("ideal {}", ci.simplified))?;
    let text = run_cli(&["ideal", "-p", "aba=bab"])?;
    check(text.contains("raw: (0, 2*x^2 - 2*y - 1, -2*x^2 + 2*y + 1, 0)"), "CLI raw line")?;
    check(text.contains("I = < 2*x^2 - 2*y - 1 >"), "CLI ideal line")?;
    Ok(format!("I = {} in {took:?}", ci.simplified))
}

fn criterion_2() -> Outcome {
    let w = parse_word("b a^-1 b^-1 a").unwrap();
    let a = parse_word("a").unwrap();
    let b = parse_word("b").unwrap();
    let p = Presentation::balanced(a.concat(&w), w.concat(&b));
    check(p.form == figure_eight().form, "two_bridge(5, 3) differs from a·w = w·b")?;
    let (ci, took) = timed(Duration::from_millis(100), || c_ideal(&p))?;
    let expected = c(1) - c(6) * Poly::x().pow(2) + c(4) * Poly::x().pow(4) - c(2) * Poly::y() - c(4) * Poly::y().pow(2);
    check(ci.simplified.gens() == [expected], format!("ideal {}", ci.simplified))?;
    Ok(format!("I = {} in {took:?}", ci.simplified))
}

fn criterion_3() -> Outcome {
    let ideal = c_ideal(&trefoil()).simplified;
    let t = to_trace_coords(&ideal.gens()[0]).map_err(|e| e.to_string())?;
    check(t == Poly::y() - c(1), format!("got {t}"))?;
    let text = run_cli(&["ideal", "-p", "aba=bab", "--trace-coords"])?;
    check(text.contains("< z - 1 >"), "CLI trace line")?;
    Ok("z - 1".into())
}

fn criterion_4() -> Outcome {
    let (x, y, s) = (Poly::x(), Poly::y(), Poly::s());
    let ((tre, fig), took) = timed(Duration::from_secs(2), || (affine_ideal(&trefoil()), affine_ideal(&figure_eight())))?;
    let gb = |gens: Vec<Poly>| groebner(&Ideal::new(gens), MonomialOrder::GradedLex);

    let q = c(4) * x.pow(2) + c(4) * &s * &x - c(3);
    let expected = gb(tre.p_gens.gens().iter().cloned().chain([q]).collect());
    check(tre.groebner == expected, "trefoil: computed ideal differs from <p, 4x^2 + 4sx - 3>")?;

    let q1 = c(5) + c(22) * &s * &x - c(9) * x.pow(2) - c(16) * &s * x.pow(3) + c(4) * x.pow(4) + c(15) * &y
        - c(12) * x.pow(2) * &y;
    let q2 = c(-5) - c(10) * &s * &x + c(19) * x.pow(2) - c(12) * x.pow(4) - c(5) * &y - c(16) * &s * &x * &y
        + c(4) * x.pow(2) * &y;
    let expected = gb(fig.p_gens.gens().iter().cloned().chain([q1, q2]).collect());
    check(fig.groebner == expected, "figure-eight: computed ideal differs from <p, q1, q2>")?;
    Ok(format!("both q-ideals Gröbner-equal modulo p in {took:?}"))
}

fn max_diff<const N: usize>(m: &[[num_complex::Complex64; N]; N], e: &[[f64; N]; N]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..N {
        for j in 0..N {
            worst = worst.max((m[i][j] - e[i][j]).norm());
        }
    }
    worst
}

fn criterion_5() -> Outcome {
    let s5 = 5f64.sqrt();
    let cp = classify(s5 / 2.0, -0.25, Some(&figure_eight()), Tolerances::default()).map_err(|e| e.to_string())?;
    check(cp.region == Region::Case2_4_AlmostIrr_SL2R, format!("figure-eight region {}", cp.region))?;
    let con = cp.construction.as_ref().ok_or("no pair")?;
    let psi_a = embed_2x2(&con.a).map_err(|e| e.to_string())?;
    let psi_b = embed_2x2(&con.b).map_err(|e| e.to_string())?;
    let first = [[1.0 + s5 / 2.0, 1.5], [-0.5, -1.0 + s5 / 2.0]];
    let second = [[s5 / 2.0, 0.5], [0.5, s5 / 2.0]];
    let err = max_diff(&psi_b.m, &first).max(max_diff(&psi_a.m, &second));
    check(err < 1e-10, format!("2x2 matrices off by {err:e}"))?;

    let cp = classify(1.0, 0.5, Some(&trefoil()), Tolerances::default()).map_err(|e| e.to_string())?;
    check(cp.region == Region::Case2_5_Parabolic_SL2R, format!("trefoil region {}", cp.region))?;
    let (ma, mb) = so_matrix_pair(cp.construction.as_ref().ok_or("no pair")?);
    let ea = [[1.0, -2.0, 2.0], [2.0, -1.0, 2.0], [2.0, -2.0, 3.0]];
    let eb = [[1.0, -0.5, -0.5], [0.5, 0.875, -0.125], [-0.5, 0.125, 1.125]];
    let err3 = max_diff(&ma.m, &ea).max(max_diff(&mb.m, &eb));
    check(err3 < 1e-10, format!("3x3 matrices off by {err3:e}"))?;

    let text = run_cli(&["classify", "--two-bridge", "5", "3", "--x", "1.1180339887"])?;
    check(text.contains("region: 2.4"), "CLI classify without y misses the 2.4 branch")?;
    Ok(format!("2.4 with Ψ(B), Ψ(A) within {err:.1e}; 2.5 within {err3:.1e}"))
}

fn curve_points(p: &Presentation, x_min: f64, x_max: f64, step: f64) -> Vec<(f64, f64)> {
    let ideal = c_ideal(p).simplified;
    let samples = sample_variety(&ideal, x_min, x_max, step, 1e-9).expect("sampling");
    samples.iter().flat_map(|s| s.points.iter().map(move |b| (s.x, b.y))).collect()
}

fn criterion_6() -> Outcome {
    let (s3, s5) = (3f64.sqrt(), 5f64.sqrt());
    let start = Instant::now();
    let mut summary = Vec::new();
    let cases = [
        (trefoil(), vec![(s3 / 2.0, 0.25), (-s3 / 2.0, 0.25)]),
        (figure_eight(), vec![(s5 / 2.0, -0.25), (-s5 / 2.0, -0.25)]),
    ];
    for (p, extra) in cases {
        let mut points = curve_points(&p, -2.5, 2.5, 0.01);
        points.extend(extra);
        let r = sweep_points(&p, &points, Tolerances::default());
        check(r.points >= 200, format!("only {} points", r.points))?;
        check(r.passed(), r.to_text())?;
        check(r.reducibility_agreements == r.non_boundary, "reducibility disagreement")?;
        summary.push(format!(
            "{}: {} pts, regions {}, max residual {:.1e}",
            p.label.clone().unwrap_or_default(),
            r.points,
            r.regions().join("/"),
            r.max_residual
        ));
    }
    let took = start.elapsed();
    check(took < Duration::from_secs(5), format!("took {took:?}"))?;
    Ok(format!("{} in {took:?}", summary.join("; ")))
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let n = rng.gen_range(0..=max_len);
    Word::from_letters((0..n).map(|_| Letter::ALL[rng.gen_range(0..4)]))
}

fn criterion_7() -> Outcome {
    for g in [Letter::A, Letter::B] {
        check((&left_mult(g) * &left_mult(g.inv())).is_identity(), "mA·mĀ ≠ I")?;
    }
    let (l, r) = (left_mult_basis(), right_mult_basis());
    for lm in [&l.a, &l.b, &l.ab] {
        for rm in [&r.a, &r.b, &r.ab] {
            check(lm * rm == rm * lm, "left and right multiplications do not commute")?;
        }
    }
    for g in Letter::ALL {
        check((&right_mult(g) * &left_mult(g)) == (&left_mult(g) * &right_mult(g)), "letter matrices do not commute")?;
    }
    let gram = gram_matrix();
    for letter in Letter::ALL {
        let m = conj_action(letter).block3();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = Poly::zero();
                for k in 0..3 {
                    for n in 0..3 {
                        acc += &(&m[k][i] * &gram[k][n] * &m[n][j]);
                    }
                }
                check(acc == gram[i][j], "conjugation does not preserve the Gram matrix")?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let va = normal_form_va();
    for k in 0..200 {
        let w = random_word(&mut rng, 12);
        let sign = if k % 2 == 0 { ShiftSign::Plus } else { ShiftSign::Minus };
        let vb = normal_form_vb(sign);
        check(cocycle_via_fox(&w, &va, &vb) == cocycle_of_word(&w, &va, &vb), format!("Fox and cocycle differ on {w}"))?;
    }
    Ok("exact matrix identities; 200 words Fox = cocycle".into())
}

fn random_unit(rng: &mut ChaCha8Rng, params: AlgebraParams) -> [f64; 4] {
    let (mu, nu) = (params.mu_f64(), params.nu_f64());
    loop {
        let (b, c, d): (f64, f64, f64) = (rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
        let rest = 1.0 + mu * b * b + nu * c * c - mu * nu * d * d;
        if rest > 1e-3 {
            let a = if rng.gen_bool(0.5) { rest.sqrt() } else { -rest.sqrt() };
            return [a, b, c, d];
        }
    }
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for params in [AlgebraParams::HAMILTON, AlgebraParams::SPLIT] {
        let eta = params.eta();
        for _ in 0..100 {
            let q = random_unit(&mut rng, params);
            let m = rotation_matrix(params, q).map_err(|e| e.to_string())?;
            for i in 0..3 {
                for j in 0..3 {
                    let g: f64 = (0..3).map(|k| m[k][i] * eta[k] * m[k][j]).sum();
                    let e = if i == j { eta[i] } else { 0.0 };
                    worst = worst.max((g - e).abs());
                }
            }
            let d = det3(&m);
            check((d - 1.0).abs() < 1e-9, format!("det {d} for {q:?}"))?;
        }
    }
    check(worst < 1e-9, format!("MᵀηM − η = {worst:e}"))?;
    for _ in 0..20 {
        let th: f64 = rng.gen_range(0.0..std::f64::consts::PI);
        let m = rotation_matrix(AlgebraParams::HAMILTON, [(th / 2.0).cos(), (th / 2.0).sin(), 0.0, 0.0])
            .map_err(|e| e.to_string())?;
        let e = [[th.cos(), -th.sin(), 0.0], [th.sin(), th.cos(), 0.0], [0.0, 0.0, 1.0]];
        for i in 0..3 {
            for j in 0..3 {
                check((m[i][j] - e[i][j]).abs() < 1e-12, format!("rotation by {th} differs"))?;
            }
        }
    }
    Ok(format!("200 unit quaternions, MᵀηM error {worst:.1e}; 20 rotations"))
}

fn criterion_9() -> Outcome {
    let ideal = c_ideal(&figure_eight()).simplified;
    let samples = sample_variety(&ideal, -1.5, 1.5, 0.005, 1e-9).map_err(|e| e.to_string())?;
    check(samples.len() == 601, format!("{} grid points", samples.len()))?;
    let (lo, h) = (parse_rational("-1.5").unwrap(), parse_rational("0.005").unwrap());
    let mut worst: f64 = 0.0;
    for (i, s) in samples.iter().enumerate() {
        let xr = &lo + &h * BigRational::from_integer(i.into());
        let expected = match figure_eight_discriminant_sign(&xr) {
            1 => 2,
            0 => 1,
            _ => 0,
        };
        check(s.points.len() == expected, format!("x = {}: {} branches, expected {expected}", s.x, s.points.len()))?;
        for b in &s.points {
            worst = worst.max(ideal_residual(&ideal, s.x, b.y).map_err(|e| e.to_string())?);
        }
    }
    check(worst < 1e-9, format!("residual {worst:e}"))?;
    Ok(format!("601 abscissae, max residual {worst:.1e}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("trefoil ideal", criterion_1),
        ("figure-eight ideal", criterion_2),
        ("trace coordinates", criterion_3),
        ("affine ideals", criterion_4),
        ("classification goldens", criterion_5),
        ("relator verification sweep", criterion_6),
        ("symbolic invariants", criterion_7),
        ("rotation matrices", criterion_8),
        ("sampling conformance", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {} {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
