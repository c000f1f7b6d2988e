//! Single-parameter commands: spectrum, tss, dims, codings, affine, holes.
//! Text goes to stdout; `--format json` swaps in one JSON object with the
//! same content. Exact integers ride as decimal strings in JSON here since
//! single-parameter input is arbitrary precision.

use std::io::Write;

use cantorlab_core::affine::{affine_inclusion_scan, VerifyResult};
use cantorlab_core::spectrum::{
    spectrum_brute, spectrum_closed_form, spectrum_exact, SpectrumResult,
};
use cantorlab_core::structure::{
    level_geometry, tss_check_depth, tss_exact, tss_witness,
};
use cantorlab_core::symbolic::{
    build_sft, coding_graph, coding_multiplicity, dimension_residual, dimension_solve, growth_rate,
    pair_coincidence, DimExponent, MultiplicityClass, SftVariant,
};
use cantorlab_core::{parse_rational, Interval, Rational};
use num_traits::ToPrimitive;
use serde_json::json;

use crate::{
    open_output, AffineArgs, CodingsArgs, DimsArgs, Failure, Format, HolesArgs, SpectrumArgs,
    TssArgs,
};

/// `println!` that surfaces write failures as a [`Failure`] instead of
/// panicking; a closed pipe simply ends the report.
macro_rules! say {
    ($($arg:tt)*) => {
        if let Err(e) = writeln!(std::io::stdout().lock(), $($arg)*) {
            return Err(Failure::from(e));
        }
    };
}

fn reject_csv(format: Format) -> Result<(), Failure> {
    if format == Format::Csv {
        Err(Failure::usage("csv output applies to scan and holes"))
    } else {
        Ok(())
    }
}

fn as_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Plain decimal text to an exact rational: digits become the numerator
/// over the matching power of ten. No exponents, no signs.
fn parse_decimal(text: &str) -> Result<Rational, Failure> {
    let t = text.trim();
    let (int_part, frac_part) = t.split_once('.').unwrap_or((t, ""));
    let digits_only =
        |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !(digits_only(int_part) || int_part.is_empty() && digits_only(frac_part))
        || !(frac_part.is_empty() || digits_only(frac_part))
    {
        return Err(Failure::usage(format!(
            "--approx takes a plain decimal like 0.7071, got {text:?}"
        )));
    }
    let mut den = String::with_capacity(frac_part.len() + 1);
    den.push('1');
    den.extend(std::iter::repeat('0').take(frac_part.len()));
    Ok(parse_rational(&format!("{int_part}{frac_part}/{den}"))?)
}

pub(crate) fn spectrum(args: SpectrumArgs, guard: u32) -> Result<(), Failure> {
    reject_csv(args.format)?;
    if let Some(decimal) = &args.approx {
        let lam = parse_decimal(decimal)?;
        let depth = args.brute.unwrap_or(8);
        let bound = spectrum_brute(&lam, depth, guard)?;
        if args.format == Format::Json {
            say!(
                "{}",
                json!({
                    "lambda": lam.to_string(),
                    "approx_input": decimal,
                    "exact": false,
                    "brute_depth": depth,
                    "upper_bound": bound.to_string(),
                })
            );
        } else {
            say!("lambda = {lam} (decimal input {decimal}; treated as this exact rational)");
            say!(
                "depth-{depth} scan: l <= {bound} ~ {:.6}; upper bound only, not the exact spectrum",
                as_f64(&bound)
            );
        }
        return Ok(());
    }

    let lam = parse_rational(args.lambda.as_deref().expect("clap requires a parameter"))?;
    let res = spectrum_exact(&lam)?;
    let brute = args
        .brute
        .map(|depth| spectrum_brute(&lam, depth, guard).map(|v| (depth, v)))
        .transpose()?;
    if let Some((depth, bound)) = &brute {
        if bound < &res.value {
            return Err(Failure::internal(format!(
                "depth-{depth} scan found {bound}, below the graph minimum {}",
                res.value
            )));
        }
        if *depth >= res.witness_n && *bound != res.value {
            return Err(Failure::internal(format!(
                "depth-{depth} scan found {bound} but the witness at depth {} gives {}",
                res.witness_n, res.value
            )));
        }
    }
    let closed = if args.closed_form {
        let prediction = spectrum_closed_form(&lam);
        if let Some(v) = &prediction {
            if v != &res.value {
                return Err(Failure::internal(format!(
                    "closed form predicts {v} but the graph gives {}",
                    res.value
                )));
            }
        }
        Some(prediction)
    } else {
        None
    };

    if args.format == Format::Json {
        let mut obj = json!({
            "p": lam.numer().to_string(),
            "q": lam.denom().to_string(),
            "lambda": lam.to_string(),
            "spec_num": res.value.numer().to_string(),
            "spec_den": res.value.denom().to_string(),
            "is_tss": tss_exact(&lam).is_some(),
            "witness_n": res.witness_n,
            "state_count": res.state_count,
            "witness": witness_json(&res),
        });
        if let Some((depth, bound)) = &brute {
            obj["brute_depth"] = json!(depth);
            obj["brute"] = json!(bound.to_string());
        }
        if let Some(prediction) = &closed {
            obj["closed_form"] = match prediction {
                Some(v) => json!(v.to_string()),
                None => json!(null),
            };
        }
        say!("{obj}");
    } else {
        say!("lambda = {lam}");
        say!("l = {} ~ {:.6}", res.value, as_f64(&res.value));
        say!(
            "witness: i = {}, j = {}, n = {}",
            res.witness_i.letters(),
            res.witness_j.letters(),
            res.witness_n
        );
        say!("states explored: {}", res.state_count);
        if let Some((depth, bound)) = &brute {
            let note = if bound == &res.value { "agrees" } else { "upper bound; raise --brute" };
            say!("depth-{depth} scan: {bound} ({note})");
        }
        if let Some(prediction) = &closed {
            match prediction {
                Some(v) => say!("closed form: {v} (agrees)"),
                None => say!("closed form: not applicable"),
            }
        }
    }
    Ok(())
}

fn witness_json(res: &SpectrumResult) -> serde_json::Value {
    json!({
        "i": res.witness_i.letters(),
        "j": res.witness_j.letters(),
        "n": res.witness_n,
    })
}

pub(crate) fn tss(args: TssArgs, guard: u32) -> Result<(), Failure> {
    reject_csv(args.format)?;
    let lam = parse_rational(&args.lambda)?;
    let report = tss_check_depth(&lam, args.depth, guard)?;
    match tss_exact(&lam) {
        Some(m) => {
            if !report.verdict {
                return Err(Failure::internal(format!(
                    "level structure contradicts total self-similarity of 1 - 3^-{m}"
                )));
            }
            if args.format == Format::Json {
                say!(
                    "{}",
                    json!({
                        "lambda": lam.to_string(),
                        "is_tss": true,
                        "m": m,
                        "depth_checked": args.depth,
                        "fail_depth": null,
                    })
                );
            } else {
                say!("lambda = {lam}: totally self-similar, 1 - 3^-{m}");
                say!("hole/level disjointness verified through depth {}", args.depth);
            }
        }
        None => {
            let w = tss_witness(&lam)?;
            let overlap = report.witness.as_ref();
            if args.format == Format::Json {
                say!(
                    "{}",
                    json!({
                        "lambda": lam.to_string(),
                        "is_tss": false,
                        "witness": {
                            "k": w.k,
                            "hole_word": w.hole_word.letters(),
                            "cylinder_word": w.cylinder_word.letters(),
                        },
                        "depth_checked": args.depth,
                        "fail_depth": report.fail_depth,
                        "overlap": overlap.map(|o| json!({
                            "hole_word": o.hole_word.letters(),
                            "level_word": o.level_word.letters(),
                            "lo": o.overlap.lo().to_string(),
                            "hi": o.overlap.hi().to_string(),
                        })),
                    })
                );
            } else {
                say!("lambda = {lam}: not totally self-similar");
                say!(
                    "witness words: hole image under {} meets the cylinder of {} (k = {})",
                    w.hole_word.letters(),
                    w.cylinder_word.letters(),
                    w.k
                );
                match (report.fail_depth, overlap) {
                    (Some(n), Some(o)) => say!(
                        "depth check: overlap at n = {n}: hole {} meets cylinder {} on [{}, {}]",
                        o.hole_word.letters(),
                        o.level_word.letters(),
                        o.overlap.lo(),
                        o.overlap.hi()
                    ),
                    _ => say!(
                        "depth check: clean through depth {}; first failure occurs by depth {}",
                        args.depth,
                        w.k + 1
                    ),
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn dims(args: DimsArgs) -> Result<(), Failure> {
    reject_csv(args.format)?;
    let m = args.m;
    let s = dimension_solve(DimExponent::S, m, args.tol)?;
    let t = dimension_solve(DimExponent::T, m, args.tol)?;
    let rs = dimension_residual(DimExponent::S, m, s).abs();
    let rt = dimension_residual(DimExponent::T, m, t).abs();
    let cross = if args.check {
        let full = build_sft(SftVariant::Full, m)?;
        let unique = build_sft(SftVariant::Unique, m)?;
        let gf = growth_rate(&full, 1e-11, 200_000)?;
        let gu = growth_rate(&unique, 1e-11, 200_000)?;
        Some((full.states.len(), gf, unique.states.len(), gu))
    } else {
        None
    };

    let log3 = |x: f64| x.ln() / 3.0f64.ln();
    if args.format == Format::Json {
        let mut obj = json!({
            "m": m,
            "s": s,
            "t": t,
            "s_residual": rs,
            "t_residual": rt,
        });
        if let Some((nf, gf, nu, gu)) = cross {
            obj["full_graph"] = json!({
                "states": nf, "growth": gf, "log3": log3(gf), "gap_to_s": (s - log3(gf)).abs(),
            });
            obj["unique_graph"] = json!({
                "states": nu, "growth": gu, "log3": log3(gu), "gap_to_t": (t - log3(gu)).abs(),
            });
        }
        say!("{obj}");
    } else {
        say!("m = {m} (lambda = 1 - 3^-{m})");
        say!("s = {s:.12} (residual {rs:.2e})");
        say!("t = {t:.12} (residual {rt:.2e})");
        if let Some((nf, gf, nu, gu)) = cross {
            say!(
                "full gram graph: {nf} states, growth {gf:.9}, log3 = {:.9}, |s - log3| = {:.2e}",
                log3(gf),
                (s - log3(gf)).abs()
            );
            say!(
                "unique gram graph: {nu} states, growth {gu:.9}, log3 = {:.9}; sits above t \
                 because the two forbidden blocks overlap each other",
                log3(gu)
            );
        }
    }
    Ok(())
}

pub(crate) fn codings(args: CodingsArgs, guard: u32) -> Result<(), Failure> {
    reject_csv(args.format)?;
    let x = parse_rational(&args.x)?;
    let lam = parse_rational(&args.lambda)?;
    let class = coding_multiplicity(&x, &lam)?;
    let graph = coding_graph(&x, &lam)?;
    let pairs = args
        .pairs
        .map(|len| pair_coincidence(&lam, len, guard))
        .transpose()?;

    if args.format == Format::Json {
        let (name, count) = match &class {
            MultiplicityClass::Finite(n) => ("finite", Some(n.to_string())),
            MultiplicityClass::CountablyInfinite => ("countably-infinite", None),
            MultiplicityClass::Continuum => ("continuum", None),
        };
        say!(
            "{}",
            json!({
                "x": x.to_string(),
                "lambda": lam.to_string(),
                "class": name,
                "count": count,
                "graph_states": graph.states.len(),
                "pairs": pairs.map(|ps| ps
                    .iter()
                    .map(|(a, b)| json!([a.letters(), b.letters()]))
                    .collect::<Vec<_>>()),
            })
        );
    } else {
        match &class {
            MultiplicityClass::Finite(n) => {
                say!("x = {x} at lambda = {lam}: exactly {n} coding(s)")
            }
            MultiplicityClass::CountablyInfinite => {
                say!("x = {x} at lambda = {lam}: countably infinitely many codings")
            }
            MultiplicityClass::Continuum => {
                say!("x = {x} at lambda = {lam}: a continuum of codings")
            }
        }
        say!("coding graph: {} reachable remainder(s)", graph.states.len());
        if let Some(ps) = &pairs {
            say!("coinciding word pairs up to length {}:", args.pairs.unwrap());
            for (a, b) in ps {
                say!("  {} = {}", a.letters(), b.letters());
            }
        }
    }
    Ok(())
}

pub(crate) fn affine(args: AffineArgs, guard: u32) -> Result<(), Failure> {
    reject_csv(args.format)?;
    let mu = parse_rational(&args.mu)?;
    let b = parse_rational(&args.b)?;
    let lam = parse_rational(&args.lambda)?;
    // A singleton grid keeps the certificate and the sweep independent;
    // a certified map refuted by its own sweep is an internal fault.
    let report =
        affine_inclusion_scan(&lam, &[mu.clone()], &[b.clone()], args.depth, guard)?;
    let row = report.rows.into_iter().next().expect("singleton grid");
    let (certificate, verdict) = (row.certificate, row.sweep);
    if certificate.is_some() && matches!(verdict, VerifyResult::Rejected { .. }) {
        return Err(Failure::internal(
            "a classified composition word was refuted by its own sweep",
        ));
    }

    if args.format == Format::Json {
        let (name, depth, witness, image) = match &verdict {
            VerifyResult::Accepted { depth_tested } => ("accepted", *depth_tested, None, None),
            VerifyResult::Rejected { depth, witness } => {
                let image = &mu * witness + &b;
                ("rejected", *depth, Some(witness.to_string()), Some(image.to_string()))
            }
            VerifyResult::Inconclusive { depth_tested } => {
                ("inconclusive", *depth_tested, None, None)
            }
        };
        say!(
            "{}",
            json!({
                "mu": mu.to_string(),
                "b": b.to_string(),
                "lambda": lam.to_string(),
                "certificate": certificate.as_ref().map(|w| w.letters()),
                "verdict": name,
                "depth": depth,
                "witness": witness,
                "image": image,
            })
        );
    } else {
        say!("g(x) = ({mu}) x + ({b}) against lambda = {lam}");
        match &certificate {
            Some(w) if w.is_empty() => say!("certificate: the identity map"),
            Some(w) => say!("certificate: composition word {}", w.letters()),
            None => say!("certificate: none"),
        }
        match &verdict {
            VerifyResult::Accepted { depth_tested } => {
                say!("sweep: accepted (tested through depth {depth_tested})")
            }
            VerifyResult::Rejected { depth, witness } => {
                let image = &mu * witness + &b;
                say!(
                    "sweep: rejected at depth {depth}: x = {witness} lies in the set but \
                     g(x) = {image} leaves level {depth}"
                );
            }
            VerifyResult::Inconclusive { depth_tested } => {
                say!(
                    "sweep: inconclusive through depth {depth_tested}; raise --depth for a \
                     longer search"
                );
            }
        }
    }
    Ok(())
}

pub(crate) fn holes(args: HolesArgs, guard: u32) -> Result<(), Failure> {
    let lam = parse_rational(&args.lambda)?;
    let geo = level_geometry(&lam, args.depth, guard)?;
    let mut out = open_output(&args.output)?;
    match args.format {
        Format::Csv => {
            writeln!(out, "set,index,lo,hi,lo_open,hi_open")?;
            write_interval_rows(&mut out, "level", geo.basic.parts())?;
            write_interval_rows(&mut out, "hole", geo.holes.parts())?;
        }
        Format::Json => {
            let as_json = |parts: &[Interval]| {
                parts
                    .iter()
                    .map(|iv| {
                        json!({
                            "lo": iv.lo().to_string(),
                            "hi": iv.hi().to_string(),
                            "lo_open": iv.lo_open(),
                            "hi_open": iv.hi_open(),
                        })
                    })
                    .collect::<Vec<_>>()
            };
            writeln!(
                out,
                "{}",
                json!({
                    "lambda": lam.to_string(),
                    "depth": args.depth,
                    "level": as_json(geo.basic.parts()),
                    "holes": as_json(geo.holes.parts()),
                })
            )?;
        }
        Format::Text => {
            return Err(Failure::usage("holes emits csv or json; pick --format"));
        }
    }
    out.flush()?;
    Ok(())
}

fn write_interval_rows(
    out: &mut dyn Write,
    set: &str,
    parts: &[Interval],
) -> Result<(), Failure> {
    for (i, iv) in parts.iter().enumerate() {
        writeln!(
            out,
            "{set},{i},{},{},{},{}",
            iv.lo(),
            iv.hi(),
            iv.lo_open(),
            iv.hi_open()
        )?;
    }
    Ok(())
}
