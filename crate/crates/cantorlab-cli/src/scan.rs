//! The sweep: one row per reduced p/q with q <= max_den, in (q, p) order.
//! Rows are computed by a pool of workers pulling jobs off a shared
//! counter; a sequencing buffer restores input order before anything is
//! written, so output bytes never depend on scheduling. Each row is
//! flushed as it completes, keeping partial output well-formed.

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;

use cantorlab_core::numeric::rat;
use cantorlab_core::spectrum::spectrum_exact;
use cantorlab_core::structure::tss_exact;
use cantorlab_core::Rational;
use serde_json::json;

use crate::{open_output, Failure, Format, ScanArgs};

/// Keeps the job list and the per-row graphs comfortably in memory.
const MAX_DEN_CAP: u64 = 100_000;

struct Row {
    p: u64,
    q: u64,
    spec: Rational,
    is_tss: bool,
    witness_i: String,
    witness_j: String,
    witness_n: u32,
    state_count: usize,
}

fn compute_row(p: u64, q: u64) -> Result<Row, cantorlab_core::Error> {
    let lam = rat(p as i64, q as i64);
    let res = spectrum_exact(&lam)?;
    Ok(Row {
        p,
        q,
        is_tss: tss_exact(&lam).is_some(),
        witness_i: res.witness_i.letters(),
        witness_j: res.witness_j.letters(),
        witness_n: res.witness_n,
        state_count: res.state_count,
        spec: res.value,
    })
}

fn write_row(out: &mut dyn Write, row: &Row, format: Format) -> Result<(), Failure> {
    match format {
        Format::Csv => writeln!(
            out,
            "{},{},{}/{},{},{},{},{},{}",
            row.p,
            row.q,
            row.p,
            row.q,
            row.spec.numer(),
            row.spec.denom(),
            row.is_tss,
            row.witness_n,
            row.state_count
        )?,
        Format::Json => writeln!(
            out,
            "{}",
            json!({
                "p": row.p,
                "q": row.q,
                "lambda": format!("{}/{}", row.p, row.q),
                "spec_num": row.spec.numer().to_string(),
                "spec_den": row.spec.denom().to_string(),
                "is_tss": row.is_tss,
                "witness_n": row.witness_n,
                "state_count": row.state_count,
                "witness": {
                    "i": row.witness_i,
                    "j": row.witness_j,
                    "n": row.witness_n,
                },
            })
        )?,
        Format::Text => unreachable!("rejected before any row is computed"),
    }
    Ok(())
}

#[derive(Default)]
struct Summary {
    rows: u64,
    min: Option<Rational>,
    max: Option<Rational>,
    two_thirds: u64,
    tss: u64,
}

impl Summary {
    fn absorb(&mut self, row: &Row) {
        self.rows += 1;
        if self.min.as_ref().is_none_or(|m| &row.spec < m) {
            self.min = Some(row.spec.clone());
        }
        if self.max.as_ref().is_none_or(|m| &row.spec > m) {
            self.max = Some(row.spec.clone());
        }
        if row.spec == rat(2, 3) {
            self.two_thirds += 1;
        }
        if row.is_tss {
            self.tss += 1;
        }
    }

    /// CSV keeps stdout parseable and reports on stderr; JSON appends a
    /// summary object. The 2/3-count must equal the TSS count: equality
    /// of the two routes is the sweep's built-in cross-check.
    fn finish(self, out: &mut dyn Write, format: Format) -> Result<(), Failure> {
        let fmt_opt = |v: &Option<Rational>| {
            v.as_ref().map_or_else(|| "n/a".to_string(), |r| r.to_string())
        };
        match format {
            Format::Csv => eprintln!(
                "scan summary: rows={} min={} max={} two_thirds_rows={} tss_rows={}",
                self.rows,
                fmt_opt(&self.min),
                fmt_opt(&self.max),
                self.two_thirds,
                self.tss
            ),
            Format::Json => {
                writeln!(
                    out,
                    "{}",
                    json!({
                        "summary": {
                            "rows": self.rows,
                            "min": self.min.as_ref().map(|r| r.to_string()),
                            "max": self.max.as_ref().map(|r| r.to_string()),
                            "two_thirds_rows": self.two_thirds,
                            "tss_rows": self.tss,
                        }
                    })
                )?;
                out.flush()?;
            }
            Format::Text => unreachable!("rejected before any row is computed"),
        }
        if self.two_thirds != self.tss {
            return Err(Failure::internal(format!(
                "spectrum hit 2/3 on {} rows but {} parameters are totally self-similar",
                self.two_thirds, self.tss
            )));
        }
        Ok(())
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn run(args: ScanArgs) -> Result<(), Failure> {
    if args.format == Format::Text {
        return Err(Failure::usage("scan emits csv or json; pick --format"));
    }
    if args.max_den > MAX_DEN_CAP {
        return Err(Failure {
            code: 3,
            message: format!("--max-den above the cap of {MAX_DEN_CAP}"),
        });
    }
    let workers = match args.workers {
        0 => thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        n => n,
    };

    let jobs: Vec<(u64, u64)> = (2..=args.max_den)
        .flat_map(|q| (1..q).filter(move |p| gcd(*p, q) == 1).map(move |p| (p, q)))
        .collect();

    let mut out = open_output(&args.output)?;
    if args.format == Format::Csv {
        writeln!(out, "p,q,lambda,spec_num,spec_den,is_tss,witness_n,state_count")?;
        out.flush()?;
    }

    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<(usize, Result<Row, cantorlab_core::Error>)>();
    let summary = thread::scope(|s| -> Result<Summary, Failure> {
        for _ in 0..workers {
            let tx = tx.clone();
            let (jobs, next) = (&jobs, &next);
            s.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(p, q)) = jobs.get(i) else { break };
                if tx.send((i, compute_row(p, q))).is_err() {
                    break;
                }
            });
        }
        drop(tx);

        let mut pending = BTreeMap::new();
        let mut expected = 0usize;
        let mut summary = Summary::default();
        for (i, row) in rx {
            pending.insert(i, row);
            while let Some(row) = pending.remove(&expected) {
                let row = row?;
                write_row(out.as_mut(), &row, args.format)?;
                out.flush()?;
                summary.absorb(&row);
                expected += 1;
            }
        }
        assert!(pending.is_empty(), "sequencer drained");
        Ok(summary)
    })?;
    summary.finish(out.as_mut(), args.format)
}
