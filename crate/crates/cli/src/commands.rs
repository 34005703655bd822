use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde_json::{json, Value};
use wigner_core::holonomy::{finish, LoopTransport, TransportOptions};
use wigner_core::{
    boost_from_velocity, compose, decompose_boost_rotation, sweep_radius, total_wigner_rotation,
    wigner_angle_two_boosts, CircleLoop, ExperimentConfig, ExperimentResult, ShotNoise, SpinState,
    SweepRow, Velocity3, SPEED_OF_LIGHT,
};

use crate::args::{
    ExperimentArgs, Format, OrbitArgs, OutputArgs, SweepArgs, Units, WignerAngleArgs,
};
use crate::config::{DurationGrid, LifetimeMultiples, RadiusGrid, RadiusRange, SweepConfig};
use crate::format::{csv_writer, fmt_sig, sig, sig3};
use crate::{manifest_path, CliError, RunManifest};

/// Opens the data destination, runs `body` on it, and writes the manifest
/// sidecar when the destination is a file.
fn emit(
    output: &OutputArgs,
    stdout: &mut dyn Write,
    manifest: &RunManifest,
    body: impl FnOnce(&mut dyn Write) -> Result<(), CliError>,
) -> Result<(), CliError> {
    match &output.out {
        None => {
            body(stdout)?;
            stdout.flush()?;
        }
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::io(path, e))?;
            let mut w = BufWriter::new(file);
            body(&mut w)?;
            w.flush().map_err(|e| CliError::io(path, e))?;
            write_manifest(path, manifest)?;
        }
    }
    Ok(())
}

fn write_manifest(data_path: &Path, manifest: &RunManifest) -> Result<(), CliError> {
    let path = manifest_path(data_path);
    let mut text = serde_json::to_string_pretty(manifest).expect("manifest serializes");
    text.push('\n');
    std::fs::write(&path, text).map_err(|e| CliError::io(&path, e))
}

fn write_json(w: &mut dyn Write, value: &Value) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *w, value).map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(w)?;
    Ok(())
}

fn write_csv(w: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
    let mut csv = csv_writer(&mut *w);
    csv.write_record(header)?;
    for row in rows {
        csv.write_record(row)?;
    }
    csv.flush()?;
    Ok(())
}

fn triple(v: [f64; 3]) -> String {
    format!("({}, {}, {})", fmt_sig(v[0]), fmt_sig(v[1]), fmt_sig(v[2]))
}

pub fn wigner_angle(a: &WignerAngleArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let scale = match a.units {
        Units::C => 1.0,
        Units::Mps => 1.0 / SPEED_OF_LIGHT,
    };
    let v1 = Velocity3::from_array(a.v1.map(|c| c * scale))?;
    let v2 = Velocity3::from_array(a.v2.map(|c| c * scale))?;
    let (v3, _) =
        decompose_boost_rotation(&compose(&boost_from_velocity(v2), &boost_from_velocity(v1)))?;
    let rot = wigner_angle_two_boosts(v1, v2)?;
    let positive = if rot.angle < 0.0 {
        rot.axis.map(|c| -c)
    } else {
        rot.axis
    };

    let record = json!({
        "v1": sig3(v1.components()),
        "v2": sig3(v2.components()),
        "v3": sig3(v3.components()),
        "v3_speed": sig(v3.speed()),
        "axis": sig3(rot.axis),
        "angle_rad": sig(rot.angle),
        "angle_deg": sig(rot.angle.to_degrees()),
    });
    let manifest = RunManifest::new(
        "wigner-angle",
        json!({
            "v1_c": v1.components(),
            "v2_c": v2.components(),
            "v1_mps": v1.components().map(|c| c * SPEED_OF_LIGHT),
            "v2_mps": v2.components().map(|c| c * SPEED_OF_LIGHT),
        }),
        None,
    );
    emit(&a.output, stdout, &manifest, |w| {
        match a.output.format.unwrap_or(Format::Text) {
            Format::Json => write_json(w, &record),
            Format::Csv => {
                let v = v3.components();
                let row: Vec<String> = [
                    v[0],
                    v[1],
                    v[2],
                    rot.axis[0],
                    rot.axis[1],
                    rot.axis[2],
                    rot.angle,
                ]
                .iter()
                .map(|x| fmt_sig(*x))
                .collect();
                write_csv(
                    w,
                    &[
                        "v3_x",
                        "v3_y",
                        "v3_z",
                        "axis_x",
                        "axis_y",
                        "axis_z",
                        "angle_rad",
                    ],
                    &[row],
                )
            }
            Format::Text => {
                writeln!(
                    w,
                    "combined velocity  {} c, speed {} c",
                    triple(v3.components()),
                    fmt_sig(v3.speed())
                )?;
                writeln!(
                    w,
                    "wigner rotation    {} deg about {}",
                    fmt_sig(rot.angle.abs().to_degrees()),
                    triple(positive)
                )?;
                writeln!(
                    w,
                    "signed about v2 x v1  {} deg ({} rad), axis {}",
                    fmt_sig(rot.angle.to_degrees()),
                    fmt_sig(rot.angle),
                    triple(rot.axis)
                )?;
                Ok(())
            }
        }
    })
}

pub fn orbit(
    a: &OrbitArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let circle = CircleLoop::new(a.speed, a.turns, a.steps)?;
    let options = TransportOptions {
        closure_tolerance: a.closure_tol,
        reproject_every: std::num::NonZeroUsize::new(a.reproject_every),
    };
    if !(a.closure_tol > 0.0) {
        return Err(CliError::Usage(format!(
            "closure tolerance must be positive, got {}",
            a.closure_tol
        )));
    }
    let format = a.output.format.unwrap_or(Format::Csv);
    let manifest = RunManifest::new(
        "orbit",
        json!({
            "speed_c": a.speed,
            "turns": a.turns,
            "steps_per_turn": a.steps,
            "stride": a.stride.get(),
            "closure_tolerance": a.closure_tol,
            "reproject_every": a.reproject_every,
        }),
        None,
    );

    let mut summary = None;
    emit(&a.output, stdout, &manifest, |w| {
        let mut transport = LoopTransport::new(circle, options);
        let mut accumulated = 0.0;
        if format == Format::Csv {
            let total = circle.total_steps();
            let stride = a.stride.get() as u64;
            let mut csv = csv_writer(&mut *w);
            csv.write_record(["step", "theta_rad", "accumulated_angle_rad"])?;
            csv.write_record(["0", "0", "0"])?;
            for step in transport.by_ref() {
                let step = step?;
                accumulated = step.accumulated_angle;
                if step.step % stride == 0 || step.step == total {
                    csv.write_record([
                        step.step.to_string(),
                        fmt_sig(step.theta),
                        fmt_sig(accumulated),
                    ])?;
                }
            }
            csv.flush()?;
        } else {
            for step in transport.by_ref() {
                accumulated = step?.accumulated_angle;
            }
        }
        let result = finish(&circle, &options, transport.frame(), accumulated)?;
        match format {
            Format::Json => write_json(
                w,
                &json!({
                    "speed": sig(a.speed),
                    "turns": a.turns,
                    "steps": result.steps,
                    "discrete_angle_rad": sig(result.discrete_angle),
                    "discrete_angle_deg": sig(result.discrete_angle.to_degrees()),
                    "signed_angle_rad": sig(result.signed_angle),
                    "analytic_angle_rad": sig(result.analytic_angle),
                    "analytic_angle_deg": sig(result.analytic_angle.to_degrees()),
                    "relative_error": sig(result.relative_error()),
                    "axis": sig3(result.axis),
                    "residual_boost_speed": sig(result.residual_boost_speed),
                }),
            )?,
            Format::Text => writeln!(w, "{}", summary_line(&result))?,
            Format::Csv => {}
        }
        summary = Some(result);
        Ok(())
    })?;

    if format == Format::Csv {
        let result = summary.expect("transport finished");
        // keep standard output pure CSV when it carries the data
        let sink: &mut dyn Write = if a.output.out.is_some() {
            stdout
        } else {
            stderr
        };
        writeln!(sink, "{}", summary_line(&result))?;
    }
    Ok(())
}

fn summary_line(r: &wigner_core::HolonomyResult) -> String {
    format!(
        "discrete angle {} rad ({} deg), analytic {} rad ({} deg), relative error {}, residual boost {}",
        fmt_sig(r.discrete_angle),
        fmt_sig(r.discrete_angle.to_degrees()),
        fmt_sig(r.analytic_angle),
        fmt_sig(r.analytic_angle.to_degrees()),
        fmt_sig(r.relative_error()),
        fmt_sig(r.residual_boost_speed),
    )
}

pub fn experiment(a: &ExperimentArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let spin = SpinState::along(a.spin)?;
    let shot_noise = a.counts.map(|counts| ShotNoise {
        counts,
        seed: a.seed,
    });
    let cfg = ExperimentConfig::new(a.speed, a.radius, a.duration)
        .with_lifetime(a.lifetime)
        .with_initial_spin(spin)
        .with_shot_noise(shot_noise);
    let r = total_wigner_rotation(&cfg)?;
    let manifest = RunManifest::new(
        "experiment",
        json!({
            "speed_mps": a.speed,
            "beta": r.beta,
            "radius_m": a.radius,
            "duration_s": a.duration,
            "lifetime_s": a.lifetime,
            "initial_spin": a.spin,
            "counts": a.counts,
        }),
        a.counts.map(|_| a.seed),
    );

    emit(&a.output, stdout, &manifest, |w| {
        match a.output.format.unwrap_or(Format::Text) {
            Format::Json => write_json(w, &experiment_json(a, &r)),
            Format::Csv => {
                let mut header = vec![
                    "speed_mps",
                    "radius_m",
                    "duration_s",
                    "lifetime_s",
                    "beta",
                    "revolutions",
                    "angle_per_revolution_rad",
                    "total_angle_rad",
                    "survival_fraction",
                    "measured_angle_rad",
                ];
                let mut row: Vec<String> = [
                    a.speed,
                    a.radius,
                    a.duration,
                    a.lifetime,
                    r.beta,
                    r.revolutions,
                    r.angle_per_revolution,
                    r.total_angle_rad,
                    r.survival_fraction,
                    r.measured_angle_deg.to_radians(),
                ]
                .iter()
                .map(|x| fmt_sig(*x))
                .collect();
                if let Some(d) = &r.detector {
                    header.extend(["emitted", "surviving", "aligned", "estimated_angle_rad"]);
                    row.push(d.emitted.to_string());
                    row.push(d.surviving.to_string());
                    match &d.estimate {
                        Some(e) => {
                            row.push(e.aligned.to_string());
                            row.push(fmt_sig(e.estimated_angle));
                        }
                        None => row.extend([String::new(), String::new()]),
                    }
                }
                write_csv(w, &header, &[row])
            }
            Format::Text => {
                writeln!(
                    w,
                    "speed                    {} m/s (beta {})",
                    fmt_sig(a.speed),
                    fmt_sig(r.beta)
                )?;
                writeln!(w, "ring radius              {} m", fmt_sig(a.radius))?;
                writeln!(w, "duration                 {} s", fmt_sig(a.duration))?;
                writeln!(w, "revolutions              {}", fmt_sig(r.revolutions))?;
                writeln!(
                    w,
                    "rotation per revolution  {} rad",
                    fmt_sig(r.angle_per_revolution)
                )?;
                writeln!(
                    w,
                    "total rotation           {} deg",
                    fmt_sig(r.total_angle_deg)
                )?;
                writeln!(
                    w,
                    "measured spin rotation   {} deg",
                    fmt_sig(r.measured_angle_deg)
                )?;
                writeln!(
                    w,
                    "survival fraction        {}",
                    fmt_sig(r.survival_fraction)
                )?;
                if let Some(d) = &r.detector {
                    writeln!(
                        w,
                        "emitted / surviving      {} / {}",
                        d.emitted, d.surviving
                    )?;
                    match (&d.estimate, d.estimated_angle_deg) {
                        (Some(e), Some(deg)) => writeln!(
                            w,
                            "aligned counts           {} (estimated rotation {} deg)",
                            e.aligned,
                            fmt_sig(deg)
                        )?,
                        _ => writeln!(w, "aligned counts           none survived")?,
                    }
                }
                Ok(())
            }
        }
    })
}

fn experiment_json(a: &ExperimentArgs, r: &ExperimentResult) -> Value {
    let bloch = r.final_spin.bloch_vector().to_array();
    let detector = r.detector.map(|d| {
        json!({
            "emitted": d.emitted,
            "surviving": d.surviving,
            "aligned": d.estimate.map(|e| e.aligned),
            "estimated_angle_rad": d.estimate.map(|e| sig(e.estimated_angle)),
            "estimated_angle_deg": d.estimated_angle_deg.map(sig),
        })
    });
    json!({
        "speed_mps": sig(a.speed),
        "radius_m": sig(a.radius),
        "duration_s": sig(a.duration),
        "lifetime_s": sig(a.lifetime),
        "beta": sig(r.beta),
        "revolutions": sig(r.revolutions),
        "angle_per_revolution_rad": sig(r.angle_per_revolution),
        "total_angle_rad": sig(r.total_angle_rad),
        "total_angle_deg": sig(r.total_angle_deg),
        "measured_angle_rad": sig(r.measured_angle_deg.to_radians()),
        "measured_angle_deg": sig(r.measured_angle_deg),
        "survival_fraction": sig(r.survival_fraction),
        "final_bloch_vector": sig3(bloch),
        "detector": detector,
    })
}

/// Builds the sweep configuration from `--config` or the individual flags.
pub fn sweep_config(a: &SweepArgs) -> Result<SweepConfig, CliError> {
    if let Some(path) = &a.config {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        return SweepConfig::from_json(&text);
    }
    let mut cfg = SweepConfig::default();
    if let Some(s) = a.speed {
        cfg.speed_mps = s;
    }
    if let Some(l) = a.lifetime {
        cfg.lifetime_s = l;
    }
    cfg.counts = a.counts;
    cfg.seed = a.seed;
    if let Some(radii) = &a.radii {
        cfg.radii_m = RadiusGrid::List(radii.clone());
    } else if a.radius_min.is_some()
        || a.radius_max.is_some()
        || a.radius_count.is_some()
        || a.spacing.is_some()
    {
        let RadiusGrid::Range(default) = RadiusGrid::default() else {
            unreachable!("default grid is a range")
        };
        cfg.radii_m = RadiusGrid::Range(RadiusRange {
            min: a.radius_min.unwrap_or(default.min),
            max: a.radius_max.unwrap_or(default.max),
            count: a.radius_count.unwrap_or(default.count),
            spacing: a.spacing.unwrap_or(default.spacing),
            include: Vec::new(),
        });
    }
    if let Some(d) = &a.durations {
        cfg.durations_s = DurationGrid::List(d.clone());
    } else if let Some(m) = &a.lifetime_multiples {
        cfg.durations_s = DurationGrid::Multiples(LifetimeMultiples {
            lifetime_multiples: m.clone(),
        });
    }
    Ok(cfg)
}

/// Evaluates a sweep configuration into rows, durations outer and radii
/// inner.
pub fn evaluate_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>, CliError> {
    let radii = cfg.radii()?;
    let durations = cfg.durations()?;
    if cfg.seed.is_some() && cfg.counts.is_none() {
        return Err(CliError::Usage("seed given without counts".into()));
    }
    let shot_noise = cfg.counts.map(|counts| ShotNoise {
        counts,
        seed: cfg.seed.unwrap_or(0),
    });
    let base = ExperimentConfig::new(cfg.speed_mps, radii[0], durations[0])
        .with_lifetime(cfg.lifetime_s)
        .with_shot_noise(shot_noise);
    Ok(sweep_radius(&base, &radii, &durations)?)
}

pub const SWEEP_HEADER: [&str; 4] = ["radius_m", "duration_s", "omega_T_deg", "survival_fraction"];
pub const SWEEP_NOISE_HEADER: [&str; 3] = ["emitted", "surviving", "estimated_omega_T_deg"];

pub fn sweep(a: &SweepArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let cfg = sweep_config(a)?;
    let rows = evaluate_sweep(&cfg)?;
    let manifest = RunManifest::new(
        "sweep",
        json!({
            "config": &cfg,
            "beta": cfg.speed_mps / SPEED_OF_LIGHT,
            "radii_m": cfg.radii()?,
            "durations_s": cfg.durations()?,
        }),
        cfg.counts.map(|_| cfg.seed.unwrap_or(0)),
    );
    let noisy = cfg.counts.is_some();
    emit(&a.output, stdout, &manifest, |w| {
        match a.output.format.unwrap_or(Format::Csv) {
            Format::Json => {
                let rows: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let r = &row.result;
                    json!({
                        "radius_m": sig(row.radius_si),
                        "duration_s": sig(row.duration_si),
                        "omega_T_rad": sig(r.total_angle_rad),
                        "omega_T_deg": sig(r.total_angle_deg),
                        "survival_fraction": sig(r.survival_fraction),
                        "surviving": r.detector.map(|d| d.surviving),
                        "estimated_omega_T_deg": r.detector.and_then(|d| d.estimated_angle_deg).map(sig),
                    })
                })
                .collect();
                write_json(w, &json!({ "speed_mps": sig(cfg.speed_mps), "rows": rows }))
            }
            Format::Csv | Format::Text => {
                let mut header: Vec<&str> = SWEEP_HEADER.to_vec();
                if noisy {
                    header.extend(SWEEP_NOISE_HEADER);
                }
                let table: Vec<Vec<String>> =
                    rows.iter().map(|row| sweep_record(row, noisy)).collect();
                write_csv(w, &header, &table)
            }
        }
    })
}

fn sweep_record(row: &SweepRow, noisy: bool) -> Vec<String> {
    let r = &row.result;
    let mut rec = vec![
        fmt_sig(row.radius_si),
        fmt_sig(row.duration_si),
        fmt_sig(r.total_angle_deg),
        fmt_sig(r.survival_fraction),
    ];
    if noisy {
        match r.detector {
            Some(d) => {
                rec.push(d.emitted.to_string());
                rec.push(d.surviving.to_string());
                rec.push(d.estimated_angle_deg.map(fmt_sig).unwrap_or_default());
            }
            None => rec.extend([String::new(), String::new(), String::new()]),
        }
    }
    rec
}
