//! Acceptance gate. Runs without the libtest harness so that each criterion
//! prints exactly one PASS/FAIL line whatever the capture settings; exits
//! non-zero if any criterion fails.

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use wigner_cli::{evaluate_sweep, SweepConfig, SWEEP_HEADER};
use wigner_core::{
    apply_rotation, bloch_vector, holonomy_area_integral, measured_rotation_angle,
    rotation_operator, total_wigner_rotation, transport_loop, wigner_angle_circle,
    wigner_angle_two_boosts, CircleLoop, ExperimentConfig, LorentzTransform, RotationAxisAngle,
    SpinState, SpinorTransform, Velocity3, SPEED_OF_LIGHT,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// ---------- independent oracles ----------

/// γ − 1 without cancellation.
fn gamma_minus_one(beta: f64) -> f64 {
    let b2 = beta * beta;
    let g = 1.0 / (1.0 - b2).sqrt();
    b2 * g * g / (g + 1.0)
}

/// Wigner angle of two perpendicular boosts: tan ω = γ₁γ₂β₁β₂ / (γ₁ + γ₂).
fn perpendicular_wigner_deg(b1: f64, b2: f64) -> f64 {
    let g1 = 1.0 / (1.0 - b1 * b1).sqrt();
    let g2 = 1.0 / (1.0 - b2 * b2).sqrt();
    (g1 * g2 * b1 * b2 / (g1 + g2)).atan().to_degrees()
}

/// Holonomy of the geodesic N-gon inscribed in the velocity circle of
/// speed β: its hyperbolic area, from N isosceles triangles.
fn inscribed_polygon_angle(beta: f64, n: u64) -> f64 {
    let g = 1.0 / (1.0 - beta * beta).sqrt();
    let t = (PI / n as f64).tan();
    2.0 * n as f64 * ((g - 1.0) * t / (1.0 + g * t * t)).atan()
}

/// Total rotation from rotation rate ω·v/(2πr) with γ − 1 from its series,
/// in radians.
fn total_rotation_series(v: f64, r: f64, t: f64) -> f64 {
    let b2 = (v / SPEED_OF_LIGHT).powi(2);
    let gm1 = b2 / 2.0 + 3.0 * b2 * b2 / 8.0 + 5.0 * b2 * b2 * b2 / 16.0;
    v * t * gm1 / r
}

fn rodrigues(axis: [f64; 3], angle: f64, v: [f64; 3]) -> [f64; 3] {
    let (s, c) = angle.sin_cos();
    let k = axis;
    let kv = k[0] * v[0] + k[1] * v[1] + k[2] * v[2];
    let cross = [
        k[1] * v[2] - k[2] * v[1],
        k[2] * v[0] - k[0] * v[2],
        k[0] * v[1] - k[1] * v[0],
    ];
    [0, 1, 2].map(|i| v[i] * c + cross[i] * s + k[i] * kv * (1.0 - c))
}

fn random_unit(rng: &mut StdRng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [0; 3].map(|_| rng.random_range(-1.0..1.0));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-3 && n <= 1.0 {
            return v.map(|c| c / n);
        }
    }
}

fn random_velocity(rng: &mut StdRng) -> Velocity3 {
    Velocity3::along(random_unit(rng), rng.random_range(0.0..0.95)).unwrap()
}

fn run_sweep(out: &Path) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_wigner"))
        .arg("sweep")
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

// ---------- criteria ----------

fn two_boost_angles() -> Outcome {
    let angle = |b: f64| {
        let r =
            wigner_angle_two_boosts(Velocity3::new(b, 0.0, 0.0)?, Velocity3::new(0.0, b, 0.0)?)?;
        Ok::<f64, wigner_core::Error>(r.angle.abs().to_degrees())
    };
    let fast = angle(0.5).map_err(|e| e.to_string())?;
    let slow = angle(0.1).map_err(|e| e.to_string())?;
    let oracle_fast = perpendicular_wigner_deg(0.5, 0.5);
    let oracle_slow = perpendicular_wigner_deg(0.1, 0.1);
    check(
        (fast - 8.21).abs() <= 0.01
            && (slow - 0.288).abs() <= 0.002
            && (fast - oracle_fast).abs() < 1e-10
            && (slow - oracle_slow).abs() < 1e-10,
        format!("0.5c: {fast:.7} deg (closed form {oracle_fast:.7}); 0.1c: {slow:.7} deg (closed form {oracle_slow:.7})"),
    )
}

fn closed_form_vs_quadrature() -> Outcome {
    let closed = wigner_angle_circle(0.5).map_err(|e| e.to_string())?;
    let quad = holonomy_area_integral(0.5, 256).map_err(|e| e.to_string())?;
    let oracle = 2.0 * PI * gamma_minus_one(0.5);
    check(
        (closed - quad).abs() < 1e-7 && (closed - oracle).abs() < 1e-7 && (quad - oracle).abs() < 1e-7,
        format!(
            "closed form {closed:.10}, quadrature {quad:.10}, oracle {oracle:.10}; quoted 0.9720084 differs by {:.2e}",
            (oracle - 0.9720084f64).abs()
        ),
    )
}

fn discrete_transport() -> Outcome {
    let run = |n: u64| {
        let c = CircleLoop::new(0.5, 1, n).map_err(|e| e.to_string())?;
        transport_loop(&c).map_err(|e| e.to_string())
    };
    let fine = run(100_000)?;
    let e3 = run(1_000)?.relative_error();
    let e4 = run(10_000)?.relative_error();
    let order = (e3 / e4).log10();
    let polygon = inscribed_polygon_angle(0.5, 100_000);
    check(
        fine.relative_error().abs() < 1e-4
            && fine.residual_boost_speed < 1e-8
            && (order - 2.0).abs() < 0.01
            && (fine.discrete_angle - polygon).abs() < 1e-10,
        format!(
            "N=1e5 relative error {:.3e}, residual boost {:.1e}, order {order:.4}, |discrete - polygon| {:.1e}",
            fine.relative_error(),
            fine.residual_boost_speed,
            (fine.discrete_angle - polygon).abs()
        ),
    )
}

fn neutron_prediction() -> Outcome {
    let (v, r, tau) = (2.0e3, 2.0e-3, 887.0);
    let mut parts = Vec::new();
    let mut ok = true;
    for (k, quoted) in [(1.0, 1.1), (2.0, 2.2), (4.0, 4.4)] {
        let t = k * tau;
        let res =
            total_wigner_rotation(&ExperimentConfig::new(v, r, t)).map_err(|e| e.to_string())?;
        let series = total_rotation_series(v, r, t);
        let nonrel = v.powi(3) * t / (2.0 * r * SPEED_OF_LIGHT.powi(2));
        let rel_series = (res.total_angle_rad - series).abs() / series;
        let rel_nonrel = (res.total_angle_rad - nonrel).abs() / nonrel;
        let within = (res.total_angle_deg - quoted).abs() / quoted;
        ok &= within <= 0.05 && rel_series < 1e-12 && rel_nonrel < 1e-10;
        parts.push(format!(
            "t={k}tau: {:.7} deg ({:.1}% off {quoted}, nonrel rel diff {rel_nonrel:.1e})",
            res.total_angle_deg,
            100.0 * within
        ));
    }
    check(ok, parts.join("; "))
}

fn sweep_reproduction() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("fig.csv");
    let out = run_sweep(&path);
    if !out.status.success() {
        return Err(format!("sweep exited with {}", out.status));
    }
    let mut reader = csv::Reader::from_path(&path).map_err(|e| e.to_string())?;
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| e.to_string())?
        .iter()
        .map(String::from)
        .collect();
    if header != SWEEP_HEADER {
        return Err(format!("unexpected header {header:?}"));
    }
    let mut csv_rows = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| e.to_string())?;
        let f: Vec<f64> = rec.iter().map(|s| s.parse().unwrap()).collect();
        csv_rows.push((f[0], f[1], f[2], f[3]));
    }

    let durations = [887.0, 1774.0, 2661.0, 3548.0];
    let mut monotone = true;
    let mut covered = true;
    for &t in &durations {
        let block: Vec<_> = csv_rows.iter().filter(|r| r.1 == t).collect();
        covered &=
            block.first().map(|r| r.0) == Some(5e-4) && block.last().map(|r| r.0) == Some(1e-2);
        monotone &=
            !block.is_empty() && block.windows(2).all(|w| w[1].0 > w[0].0 && w[1].2 < w[0].2);
    }

    // linearity in t and 1/r on the unrounded table
    let rows = evaluate_sweep(&SweepConfig::default()).map_err(|e| e.to_string())?;
    let k0 = rows[0].result.total_angle_rad * rows[0].radius_si / rows[0].duration_si;
    let lin = rows
        .iter()
        .map(|r| (r.result.total_angle_rad * r.radius_si / r.duration_si - k0).abs() / k0)
        .fold(0.0, f64::max);
    // and on the printed file, to its 9-digit resolution
    let c0 = csv_rows[0].2 * csv_rows[0].0 / csv_rows[0].1;
    let lin_csv = csv_rows
        .iter()
        .map(|r| (r.2 * r.0 / r.1 - c0).abs() / c0)
        .fold(0.0, f64::max);

    let oracle = total_rotation_series(2.0e3, 2.0e-3, 887.0).to_degrees();
    let anchor = csv_rows.iter().find(|r| r.0 == 2e-3 && r.1 == 887.0);
    let anchor_ok =
        anchor.is_some_and(|a| (a.2 - oracle).abs() < 1e-6 && (a.3 - (-1.0f64).exp()).abs() < 1e-9);
    check(
        monotone && covered && lin < 1e-12 && lin_csv < 2e-8 && anchor_ok && csv_rows.len() == rows.len(),
        format!(
            "{} rows, decreasing in r: {monotone}, linearity {lin:.1e} (table) {lin_csv:.1e} (csv), anchor {:?}",
            csv_rows.len(),
            anchor.map(|a| (a.0, a.1, a.2, a.3))
        ),
    )
}

fn representation_homomorphism() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let pairs = 20_000;
    let mut worst_hom: f64 = 0.0;
    let mut worst_metric: f64 = 0.0;
    for i in 0..pairs {
        let pick = |rng: &mut StdRng, boost: bool| {
            if boost {
                let v = random_velocity(rng);
                (LorentzTransform::boost(v), SpinorTransform::boost(v))
            } else {
                let axis = random_unit(rng);
                let angle = rng.random_range(-PI..PI);
                let r = RotationAxisAngle::new(axis, angle).unwrap();
                (
                    LorentzTransform::rotation(&r),
                    SpinorTransform::rotation(angle, axis).unwrap(),
                )
            }
        };
        // cycle through boost·boost, boost·rotation, rotation·boost
        let (first_boost, second_boost) = [(true, true), (true, false), (false, true)][i % 3];
        let (la, sa) = pick(&mut rng, first_boost);
        let (lb, sb) = pick(&mut rng, second_boost);
        let direct = la.compose(&lb);
        let via_spinor = sa.compose(&sb).to_vector().map_err(|e| e.to_string())?;
        worst_hom = worst_hom.max(direct.max_abs_diff(&via_spinor));
        for t in [&la, &lb, &direct, &via_spinor] {
            worst_metric = worst_metric.max(t.metric_defect());
        }
    }
    check(
        worst_hom < 1e-10 && worst_metric < 1e-12,
        format!("{pairs} pairs: max |spinor - vector| {worst_hom:.1e}, max metric defect {worst_metric:.1e}"),
    )
}

fn spin_layer() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0xb10c);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let s = random_unit(&mut rng);
        let axis = random_unit(&mut rng);
        let angle = rng.random_range(-PI..PI);
        let state = SpinState::along(s).unwrap();
        let u = rotation_operator(angle, axis).unwrap();
        let rotated = bloch_vector(&apply_rotation(&state, &u).unwrap()).to_array();
        let expected = rodrigues(axis, angle, s);
        worst = worst.max(
            (0..3)
                .map(|i| (rotated[i] - expected[i]).abs())
                .fold(0.0, f64::max),
        );
    }

    let cfg = ExperimentConfig::new(2.0e3, 2.0e-3, 887.0);
    let in_plane = total_wigner_rotation(&cfg).map_err(|e| e.to_string())?;
    let oracle_deg = total_rotation_series(2.0e3, 2.0e-3, 887.0).to_degrees();
    let e2e = (in_plane.measured_angle_deg - oracle_deg).abs();
    let axial =
        total_wigner_rotation(&cfg.with_initial_spin(SpinState::UP)).map_err(|e| e.to_string())?;
    let direct = {
        let up = SpinState::UP;
        let u = rotation_operator(in_plane.total_angle_rad, [0.0, 0.0, 1.0]).unwrap();
        measured_rotation_angle(&up, &apply_rotation(&up, &u).unwrap())
    };
    check(
        worst < 1e-10 && e2e < 1e-9 && axial.measured_angle_deg.abs() < 1e-9 && direct.abs() < 1e-9,
        format!(
            "double cover {worst:.1e}; in-plane |measured - omega_T| {e2e:.1e} deg; axial spin {:.1e} deg",
            axial.measured_angle_deg
        ),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = run_sweep(p);
        if !out.status.success() {
            return Err(format!("sweep exited with {}", out.status));
        }
    }
    let read = |p: &Path| std::fs::read(p).map_err(|e| e.to_string());
    let manifest = |p: &Path| -> Result<serde_json::Value, String> {
        let text =
            std::fs::read_to_string(wigner_cli::manifest_path(p)).map_err(|e| e.to_string())?;
        let mut v: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        v.as_object_mut().unwrap().remove("timestamp");
        Ok(v)
    };
    let (da, db) = (read(&a)?, read(&b)?);
    let same_manifest = manifest(&a)? == manifest(&b)?;
    check(
        same_manifest && da == db,
        format!(
            "manifests equal: {same_manifest}; {} bytes, identical: {}",
            da.len(),
            da == db
        ),
    )
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("two-boost Wigner angle", two_boost_angles),
        ("closed form vs quadrature", closed_form_vs_quadrature),
        ("discrete transport convergence", discrete_transport),
        ("storage-ring prediction", neutron_prediction),
        ("radius/duration sweep", sweep_reproduction),
        ("spinor/vector homomorphism", representation_homomorphism),
        ("spin layer", spin_layer),
        ("sweep determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
