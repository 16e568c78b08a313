//! Subcommand implementations.

use std::path::PathBuf;

use rand::{Rng, SeedableRng};

use divisor_delta::dio::{
    count_report, count_solutions, count_solutions_naive, fractional_count, min_nonzero_gap,
    DyadicBox, LemmaId,
};
use divisor_delta::divisor::{self, delta_at, DivisorTable};
use divisor_delta::error::{Error, Result};
use divisor_delta::expsum::{build_bump, eval_s, mean_square_s, seventh_moment_s, BumpConfig};
use divisor_delta::moments::moment_report;
use divisor_delta::numeric::dd::Dd;
use divisor_delta::series::{
    self, enumerate_balanced, series_partial, series_partial_streamed, weight, SeriesValue,
};
use divisor_delta::voronoi::{mean_square_r2, TruncationConfig};

use crate::table::{Cell, Format, Table};
use crate::{Cli, Command};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SeriesRoute {
    Auto,
    Dp,
    Stream,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CountMode {
    Solutions,
    MinGap,
    Fractional,
    Regression,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ExpsumMode {
    Eval,
    MeanSquare,
    Seventh,
}

fn cache_dir(cli: &Cli) -> Option<PathBuf> {
    cli.cache_dir
        .clone()
        .or_else(|| std::env::var_os("DDELTA_CACHE_DIR").map(PathBuf::from))
}

fn emit(cli: &Cli, tbl: &Table) -> Result<()> {
    let rendered = tbl.render(cli.format);
    match &cli.output {
        Some(path) => std::fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn emit_dir(cli: &Cli, tables: &[Table]) -> Result<()> {
    let dir = cli
        .output
        .as_ref()
        .ok_or_else(|| Error::invalid("report needs --output <DIR>"))?;
    std::fs::create_dir_all(dir)?;
    let ext = match cli.format {
        Format::Csv => "csv",
        Format::Json => "json",
        Format::Gnuplot => "dat",
    };
    for tbl in tables {
        let path = dir.join(format!("{}.{ext}", tbl.name));
        std::fs::write(&path, tbl.render(cli.format))?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn opt_cell(v: Option<f64>) -> Cell {
    match v {
        Some(x) => Cell::F(x),
        None => Cell::Null,
    }
}

fn parse_signs(spec: &str) -> Result<Vec<i8>> {
    let mut out = Vec::new();
    for ch in spec.chars() {
        match ch {
            '+' => out.push(1),
            '-' => out.push(-1),
            ',' | ' ' => {}
            other => return Err(Error::invalid(format!("bad sign character {other:?}"))),
        }
    }
    if out.is_empty() {
        return Err(Error::invalid("empty sign pattern"));
    }
    Ok(out)
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Sieve { limit, block_size, use_cache } => {
            sieve_cmd(cli, *limit, *block_size, *use_cache)
        }
        Command::Delta { at, from, to, count } => delta_cmd(cli, at, *from, *to, *count),
        Command::Moment { k, absolute, grid, y, quad_order } => {
            moment_cmd(cli, *k, *absolute, grid, *y, *quad_order)
        }
        Command::Series { k, l, y, route } => series_cmd(cli, *k, *l, *y, *route),
        Command::Count {
            mode,
            ranges,
            signs,
            delta,
            lemma,
            include_zero,
            nmax,
            alpha,
            beta,
            big_k,
            boxes,
            max_volume,
        } => count_cmd(
            cli,
            *mode,
            ranges,
            signs,
            *delta,
            *lemma,
            *include_zero,
            *nmax,
            *alpha,
            *beta,
            *big_k,
            *boxes,
            *max_volume,
        ),
        Command::Expsum { mode, n, x, u } => expsum_cmd(cli, *mode, *n, *x, *u),
        Command::Bump { a, delta, smooth, check_grid, profile_points, random_configs } => {
            bump_cmd(cli, *a, *delta, *smooth, check_grid, *profile_points, *random_configs)
        }
        Command::Report { t, y } => report_cmd(cli, *t, *y),
    }
}

fn sieve_cache_path(dir: &std::path::Path, limit: u64, block_size: u64) -> PathBuf {
    dir.join(format!("sieve_x{limit}_b{block_size}.ddt"))
}

fn sieve_cmd(cli: &Cli, limit: u64, block_size: u64, use_cache: bool) -> Result<()> {
    let table = if use_cache {
        let dir = cache_dir(cli)
            .ok_or_else(|| Error::invalid("--use-cache needs --cache-dir or DDELTA_CACHE_DIR"))?;
        std::fs::create_dir_all(&dir)?;
        let path = sieve_cache_path(&dir, limit, block_size);
        if path.exists() {
            eprintln!("reusing {}", path.display());
            divisor::cache::read(&path)?
        } else {
            let t = DivisorTable::build_with(limit, block_size, divisor::DEFAULT_MEMORY_BUDGET)?;
            divisor::cache::write(&t, &path)?;
            eprintln!("wrote {}", path.display());
            t
        }
    } else {
        DivisorTable::build_with(limit, block_size, divisor::DEFAULT_MEMORY_BUDGET)?
    };
    let d_max = table.values().iter().copied().max().unwrap_or(0);
    let mut tbl = Table::new("sieve", &["limit", "block_size", "sum_d", "d_max"]);
    tbl.push(vec![
        Cell::U(table.limit() as u128),
        Cell::U(table.block_size() as u128),
        Cell::U(table.sum() as u128),
        Cell::U(d_max as u128),
    ]);
    emit(cli, &tbl)
}

fn delta_cmd(
    cli: &Cli,
    at: &Option<Vec<f64>>,
    from: Option<f64>,
    to: Option<f64>,
    count: Option<u64>,
) -> Result<()> {
    let points: Vec<f64> = match (at, from, to, count) {
        (Some(list), None, None, None) => list.clone(),
        (None, Some(a), Some(b), Some(n)) => {
            if !(n >= 2) {
                return Err(Error::invalid("--count must be >= 2"));
            }
            (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
        }
        _ => {
            return Err(Error::invalid(
                "delta needs either --at or the --from/--to/--count triple",
            ))
        }
    };
    let mut tbl = Table::new("delta", &["x", "summatory_d", "delta"]);
    for x in points {
        let s = delta_at(x)?;
        tbl.push(vec![Cell::F(s.x), Cell::U(s.summatory as u128), Cell::F(s.delta)]);
    }
    emit(cli, &tbl)
}

fn moment_cmd(
    cli: &Cli,
    k: f64,
    absolute: bool,
    grid: &[f64],
    y: u64,
    quad_order: usize,
) -> Result<()> {
    let table = DivisorTable::build(y.max(2))?;
    let rows = moment_report(&table, k, !absolute, grid, y, quad_order)?;
    let mut tbl = Table::new(
        "moment",
        &["k", "signed", "t", "empirical", "predicted", "ratio", "slope"],
    );
    for r in rows {
        tbl.push(vec![
            Cell::F(r.power),
            Cell::S(if r.signed { "signed" } else { "absolute" }.to_string()),
            Cell::F(r.t1),
            Cell::F(r.empirical),
            opt_cell(r.predicted),
            opt_cell(r.ratio),
            opt_cell(r.slope),
        ]);
    }
    emit(cli, &tbl)
}

/// Stream side of the meet-in-the-middle enumeration, tuples.
fn stream_side_volume(k: u8, l: u8, y: u64) -> u128 {
    (y as u128).pow(l.max(k - l) as u32)
}

fn series_cmd(cli: &Cli, k: u8, l: u8, y: u64, route: SeriesRoute) -> Result<()> {
    let dir = cache_dir(cli);
    let feasible = stream_side_volume(k, l, y) <= 200_000_000;
    let route = match route {
        SeriesRoute::Auto => {
            if dir.is_some() && feasible {
                SeriesRoute::Stream
            } else {
                SeriesRoute::Dp
            }
        }
        explicit => explicit,
    };
    let table = DivisorTable::build(y.max(2))?;
    let (value, route_name) = match route {
        SeriesRoute::Dp => (series_partial(&table, k, l, y)?, "dp"),
        SeriesRoute::Stream => {
            if !feasible {
                return Err(Error::resource(format!(
                    "stream route over y^{} = {} tuples exceeds the budget",
                    l.max(k - l),
                    stream_side_volume(k, l, y)
                )));
            }
            match &dir {
                Some(d) => {
                    std::fs::create_dir_all(d)?;
                    let cached = series::cache::fold_tuples(d, k, l, y, |acc, tuple| {
                        let mut term = Dd::ONE;
                        for &n in tuple.ns() {
                            term = term.mul_f64(weight(table.d(n) as f64, n));
                        }
                        acc.add_dd(term);
                    })?;
                    let (value, count) = match cached {
                        Some(hit) => {
                            eprintln!("reusing cached tuple list");
                            hit
                        }
                        None => {
                            let (path, value, count) = series::cache::write_tuples_stream(
                                d,
                                k,
                                l,
                                y,
                                enumerate_balanced(k, l, y)?,
                                |acc, tuple| {
                                    let mut term = Dd::ONE;
                                    for &n in tuple.ns() {
                                        term = term.mul_f64(weight(table.d(n) as f64, n));
                                    }
                                    acc.add_dd(term);
                                },
                            )?;
                            eprintln!("wrote {}", path.display());
                            (value, count)
                        }
                    };
                    (
                        SeriesValue {
                            k,
                            l,
                            y,
                            value,
                            n_solutions: count as u128,
                            tail_bound: value.abs() * (y as f64).powf(-0.5),
                        },
                        "stream",
                    )
                }
                None => (series_partial_streamed(&table, k, l, y)?, "stream"),
            }
        }
        SeriesRoute::Auto => unreachable!(),
    };
    let mut tbl = Table::new(
        "series",
        &["k", "l", "y", "value", "n_solutions", "tail_bound", "route"],
    );
    tbl.push(vec![
        Cell::U(k as u128),
        Cell::U(l as u128),
        Cell::U(y as u128),
        Cell::F(value.value),
        Cell::U(value.n_solutions),
        Cell::F(value.tail_bound),
        Cell::S(route_name.to_string()),
    ]);
    emit(cli, &tbl)
}

#[allow(clippy::too_many_arguments)]
fn count_cmd(
    cli: &Cli,
    mode: CountMode,
    ranges: &Option<Vec<u64>>,
    signs: &Option<String>,
    delta: Option<f64>,
    lemma: Option<u8>,
    include_zero: bool,
    nmax: Option<u64>,
    alpha: Option<f64>,
    beta: Option<f64>,
    big_k: Option<u64>,
    boxes: Option<u64>,
    max_volume: Option<u64>,
) -> Result<()> {
    match mode {
        CountMode::Solutions => {
            let ranges = ranges.clone().ok_or_else(|| Error::invalid("--ranges required"))?;
            let signs = parse_signs(signs.as_deref().ok_or_else(|| Error::invalid("--signs required"))?)?;
            let delta = delta.ok_or_else(|| Error::invalid("--delta required"))?;
            let bx = DyadicBox::new(ranges.clone(), signs.clone())?;
            let exclude_zero = !include_zero;
            let mut tbl = Table::new(
                "count",
                &["lemma_id", "ranges", "signs", "delta", "exclude_zero", "count", "bound", "ratio"],
            );
            let (count, bound, ratio, lemma_id) = match lemma {
                Some(id) => {
                    let rep = count_report(&bx, delta, exclude_zero, LemmaId::from_id(id)?)?;
                    (rep.count, Some(rep.bound), Some(rep.ratio), Some(rep.lemma_id))
                }
                None => (count_solutions(&bx, delta, exclude_zero)?, None, None, None),
            };
            tbl.push(vec![
                match lemma_id {
                    Some(id) => Cell::U(id as u128),
                    None => Cell::Null,
                },
                Cell::S(join_u64(&ranges)),
                Cell::S(signs_string(&signs)),
                Cell::F(delta),
                Cell::S(exclude_zero.to_string()),
                Cell::U(count as u128),
                opt_cell(bound),
                opt_cell(ratio),
            ]);
            emit(cli, &tbl)
        }
        CountMode::MinGap => {
            let signs = parse_signs(signs.as_deref().ok_or_else(|| Error::invalid("--signs required"))?)?;
            let nmax = nmax.ok_or_else(|| Error::invalid("--nmax required"))?;
            let rep = min_nonzero_gap(signs.len(), &signs, nmax)?;
            let mut tbl = Table::new("min_gap", &["k", "signs", "nmax", "gap", "scaled", "witness"]);
            tbl.push(vec![
                Cell::U(signs.len() as u128),
                Cell::S(signs_string(&signs)),
                Cell::U(nmax as u128),
                Cell::F(rep.gap),
                Cell::F(rep.scaled),
                Cell::S(join_u64(&rep.witness)),
            ]);
            emit(cli, &tbl)
        }
        CountMode::Fractional => {
            let alpha = alpha.ok_or_else(|| Error::invalid("--alpha required"))?;
            let beta = beta.ok_or_else(|| Error::invalid("--beta required"))?;
            let big_k = big_k.ok_or_else(|| Error::invalid("--big-k required"))?;
            let delta = delta.ok_or_else(|| Error::invalid("--delta required"))?;
            let rep = fractional_count(alpha, beta, big_k, delta)?;
            let mut tbl = Table::new(
                "fractional",
                &["lemma_id", "alpha", "beta", "big_k", "delta", "count", "bound", "ratio"],
            );
            tbl.push(vec![
                Cell::U(rep.lemma_id as u128),
                Cell::F(alpha),
                Cell::F(beta),
                Cell::U(big_k as u128),
                Cell::F(delta),
                Cell::U(rep.count as u128),
                Cell::F(rep.bound),
                Cell::F(rep.ratio),
            ]);
            emit(cli, &tbl)
        }
        CountMode::Regression => {
            let boxes = boxes.unwrap_or(50);
            let max_volume = max_volume.unwrap_or(1_000_000) as u128;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cli.seed);
            let mut tbl = Table::new(
                "count_regression",
                &["idx", "ranges", "signs", "delta", "count_mitm", "count_naive", "equal"],
            );
            let mut mismatches = 0u64;
            for idx in 0..boxes {
                let k = rng.gen_range(3..=7usize);
                let mut ranges = Vec::with_capacity(k);
                loop {
                    ranges.clear();
                    for _ in 0..k {
                        ranges.push(rng.gen_range(1..=12u64));
                    }
                    if ranges.iter().map(|&n| n as u128).product::<u128>() <= max_volume {
                        break;
                    }
                }
                let mut signs = vec![1i8];
                for _ in 1..k {
                    signs.push(if rng.gen_bool(0.5) { 1 } else { -1 });
                }
                let delta = 10f64.powf(rng.gen_range(-3.0..0.5));
                let bx = DyadicBox::new(ranges.clone(), signs.clone())?;
                let fast = count_solutions(&bx, delta, true)?;
                let slow = count_solutions_naive(&bx, delta, true)?;
                if fast != slow {
                    mismatches += 1;
                }
                tbl.push(vec![
                    Cell::U(idx as u128),
                    Cell::S(join_u64(&ranges)),
                    Cell::S(signs_string(&signs)),
                    Cell::F(delta),
                    Cell::U(fast as u128),
                    Cell::U(slow as u128),
                    Cell::S((fast == slow).to_string()),
                ]);
            }
            eprintln!("{boxes} boxes, {mismatches} mismatches");
            emit(cli, &tbl)
        }
    }
}

fn expsum_cmd(cli: &Cli, mode: ExpsumMode, n: u64, x: Option<f64>, u: Option<f64>) -> Result<()> {
    match mode {
        ExpsumMode::Eval => {
            let x = x.ok_or_else(|| Error::invalid("--x required for eval"))?;
            let s = eval_s(x, n);
            let mut tbl = Table::new("expsum_eval", &["x", "n", "re", "im", "abs"]);
            tbl.push(vec![
                Cell::F(x),
                Cell::U(n as u128),
                Cell::F(s.re),
                Cell::F(s.im),
                Cell::F(s.abs()),
            ]);
            emit(cli, &tbl)
        }
        ExpsumMode::MeanSquare => {
            let rep = mean_square_s(n)?;
            let mut tbl =
                Table::new("expsum_mean_square", &["n", "x_lo", "x_hi", "integral", "bound", "ratio"]);
            tbl.push(vec![
                Cell::U(rep.n as u128),
                Cell::F(rep.u_lo),
                Cell::F(rep.u_hi),
                Cell::F(rep.integral),
                Cell::F(rep.bound),
                Cell::F(rep.ratio),
            ]);
            emit(cli, &tbl)
        }
        ExpsumMode::Seventh => {
            let u = u.unwrap_or((n as f64).sqrt());
            let rep = seventh_moment_s(n, u)?;
            let mut tbl =
                Table::new("expsum_seventh", &["n", "u_lo", "u_hi", "integral", "bound", "ratio"]);
            tbl.push(vec![
                Cell::U(rep.n as u128),
                Cell::F(rep.u_lo),
                Cell::F(rep.u_hi),
                Cell::F(rep.integral),
                Cell::F(rep.bound),
                Cell::F(rep.ratio),
            ]);
            emit(cli, &tbl)
        }
    }
}

fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 4 {
        return Err(Error::invalid(format!(
            "grid spec must be log:<lo>:<hi>:<points> or lin:<lo>:<hi>:<points>, got {spec:?}"
        )));
    }
    let lo: f64 = parts[1].parse().map_err(|_| Error::invalid("bad grid lo"))?;
    let hi: f64 = parts[2].parse().map_err(|_| Error::invalid("bad grid hi"))?;
    let n: usize = parts[3].parse().map_err(|_| Error::invalid("bad grid count"))?;
    if !(lo < hi) || n < 2 {
        return Err(Error::invalid("grid needs lo < hi and at least 2 points"));
    }
    let pts = (0..n).map(|i| i as f64 / (n - 1) as f64);
    match parts[0] {
        "log" => {
            if lo <= 0.0 {
                return Err(Error::invalid("log grid needs lo > 0"));
            }
            Ok(pts.map(|t| lo * (hi / lo).powf(t)).collect())
        }
        "lin" => Ok(pts.map(|t| lo + (hi - lo) * t).collect()),
        other => Err(Error::invalid(format!("unknown grid kind {other:?}"))),
    }
}

fn bump_cmd(
    cli: &Cli,
    a: Option<f64>,
    delta: Option<f64>,
    smooth: Option<u32>,
    check_grid: &str,
    profile_points: Option<u64>,
    random_configs: Option<u64>,
) -> Result<()> {
    let grid = parse_grid(check_grid)?;
    if let Some(count) = random_configs {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cli.seed);
        let mut tbl =
            Table::new("bump_check", &["a", "delta", "k", "grid_points", "violations"]);
        for _ in 0..count {
            let a: f64 = rng.gen_range(0.1..5.0);
            let d = rng.gen_range(a / 1000.0..a / 4.0 * 0.999);
            let k = rng.gen_range(1..=9u32);
            let bump = build_bump(BumpConfig::new(a, d, k)?);
            let violations = grid
                .iter()
                .filter(|&&x| bump.transform(x).abs() > bump.bound(x) * (1.0 + 1e-12))
                .count();
            tbl.push(vec![
                Cell::F(a),
                Cell::F(d),
                Cell::U(k as u128),
                Cell::U(grid.len() as u128),
                Cell::U(violations as u128),
            ]);
        }
        return emit(cli, &tbl);
    }

    let a = a.ok_or_else(|| Error::invalid("--a required"))?;
    let d = delta.ok_or_else(|| Error::invalid("--delta required"))?;
    let k = smooth.ok_or_else(|| Error::invalid("--smooth required"))?;
    let bump = build_bump(BumpConfig::new(a, d, k)?);

    if let Some(points) = profile_points {
        if points < 2 {
            return Err(Error::invalid("--profile-points must be >= 2"));
        }
        let mut tbl = Table::new("bump_profile", &["y", "phi"]);
        let lim = bump.support() * 1.05;
        for i in 0..points {
            let y = -lim + 2.0 * lim * i as f64 / (points - 1) as f64;
            tbl.push(vec![Cell::F(y), Cell::F(bump.phi(y))]);
        }
        return emit(cli, &tbl);
    }

    let mut tbl = Table::new("bump_check", &["x", "abs_phi_hat", "bound", "ok"]);
    for &x in &grid {
        let phi_hat = bump.transform(x).abs();
        let bound = bump.bound(x);
        tbl.push(vec![
            Cell::F(x),
            Cell::F(phi_hat),
            Cell::F(bound),
            Cell::S((phi_hat <= bound * (1.0 + 1e-12)).to_string()),
        ]);
    }
    emit(cli, &tbl)
}

fn report_cmd(cli: &Cli, t: f64, y: u64) -> Result<()> {
    if !(t >= 1000.0) {
        return Err(Error::invalid("report needs --t >= 1000"));
    }
    let table = DivisorTable::build(y.max(10_000).max(2 * (t as u64)))?;
    let mut tables = Vec::new();

    let mut moments = Table::new(
        "report_moments",
        &["k", "t", "empirical", "predicted", "ratio", "slope"],
    );
    let grid = [t / 100.0, t / 10.0, t];
    for k in [1u8, 2] {
        for r in moment_report(&table, k as f64, true, &grid, y, 8)? {
            moments.push(vec![
                Cell::U(k as u128),
                Cell::F(r.t1),
                Cell::F(r.empirical),
                opt_cell(r.predicted),
                opt_cell(r.ratio),
                opt_cell(r.slope),
            ]);
        }
    }
    tables.push(moments);

    let mut ser = Table::new("report_series", &["k", "l", "y", "value", "n_solutions", "tail_bound"]);
    for (k, l) in [(2u8, 1u8), (3, 1), (4, 2)] {
        let v = series_partial(&table, k, l, y)?;
        ser.push(vec![
            Cell::U(k as u128),
            Cell::U(l as u128),
            Cell::U(y as u128),
            Cell::F(v.value),
            Cell::U(v.n_solutions),
            Cell::F(v.tail_bound),
        ]);
    }
    tables.push(ser);

    let mut r2 = Table::new("report_r2", &["t", "n", "estimate", "normalized_ratio"]);
    for n in [16u64, 64, 256] {
        let cfg = TruncationConfig::new(n, &table)?;
        let ms = mean_square_r2(t, &cfg, 1000)?;
        r2.push(vec![
            Cell::F(ms.t),
            Cell::U(ms.n as u128),
            Cell::F(ms.estimate),
            Cell::F(ms.normalized_ratio),
        ]);
    }
    tables.push(r2);

    let mut es = Table::new("report_expsum", &["n", "x_lo", "x_hi", "integral", "bound", "ratio"]);
    let ms = mean_square_s(64)?;
    es.push(vec![
        Cell::U(ms.n as u128),
        Cell::F(ms.u_lo),
        Cell::F(ms.u_hi),
        Cell::F(ms.integral),
        Cell::F(ms.bound),
        Cell::F(ms.ratio),
    ]);
    let sv = seventh_moment_s(64, 8.0)?;
    es.push(vec![
        Cell::U(sv.n as u128),
        Cell::F(sv.u_lo),
        Cell::F(sv.u_hi),
        Cell::F(sv.integral),
        Cell::F(sv.bound),
        Cell::F(sv.ratio),
    ]);
    tables.push(es);

    let mut bumps = Table::new("report_bump", &["a", "delta", "k", "grid_points", "violations"]);
    let bump = build_bump(BumpConfig::new(1.2, 0.2, 4)?);
    let grid = parse_grid("log:1e-3:1e6:200")?;
    let violations = grid
        .iter()
        .filter(|&&x| bump.transform(x).abs() > bump.bound(x) * (1.0 + 1e-12))
        .count();
    bumps.push(vec![
        Cell::F(1.2),
        Cell::F(0.2),
        Cell::U(4),
        Cell::U(grid.len() as u128),
        Cell::U(violations as u128),
    ]);
    tables.push(bumps);

    emit_dir(cli, &tables)
}

fn join_u64(vals: &[u64]) -> String {
    vals.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("|")
}

fn signs_string(signs: &[i8]) -> String {
    signs.iter().map(|&s| if s == 1 { '+' } else { '-' }).collect()
}
