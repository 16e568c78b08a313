//! Balanced square-root tuples and the truncated singular series.
//!
//! A k-tuple `(n₁,…,n_k)` with `nᵢ ≤ y` is *balanced* for the split `ℓ`
//! when `√n₁ + … + √n_ℓ = √n_{ℓ+1} + … + √n_k`. Writing `nᵢ = aᵢ²hᵢ` with
//! squarefree kernels, independence of the `√h` forces the coefficient sums
//! per kernel to match on both sides, so solutions factor kernel by kernel.
//! Two routes exploit that:
//!
//! * [`enumerate_balanced`] streams every ordered solution exactly once by
//!   meet-in-the-middle: the smaller side is indexed by its canonical kernel
//!   vector, the larger side streams against the index.
//! * [`series_partial`] evaluates the truncated series value without
//!   materializing tuples: each kernel contributes a tiny table of balanced
//!   coefficient-tuple weights (one-dimensional convolutions), and the
//!   per-kernel tables combine through a binomial convolution that accounts
//!   for the assignment of slots to kernels. The reduction tree is fixed, so
//!   the result is reproducible bit for bit; all products and sums run in
//!   double-double, which keeps the value exact to ~100 bits and lets the
//!   independent parametrizations agree to the final ulp.

use std::collections::HashMap;
use std::f64::consts::PI;

use crate::divisor::DivisorTable;
use crate::error::{Error, Result};
use crate::numeric::dd::Dd;
use crate::numeric::kahan::DdAcc;
use crate::numeric::zeta::zeta;
use crate::radical::KernelTable;

pub const MAX_K: u8 = 9;

fn validate(k: u8, l: u8, y: u64) -> Result<()> {
    if !(2..=MAX_K).contains(&k) {
        return Err(Error::invalid(format!("k must be in 2..=9, got {k}")));
    }
    if !(1..k).contains(&l) {
        return Err(Error::invalid(format!("split must satisfy 1 <= l < k, got l={l} k={k}")));
    }
    if y == 0 {
        return Err(Error::invalid("y must be >= 1"));
    }
    Ok(())
}

/// Term weight `f(n)·n^{-3/4}`; the single definition shared by every route.
#[inline]
pub fn weight(f_n: f64, n: u64) -> f64 {
    f_n * (n as f64).powf(-0.75)
}

/// One ordered solution of the balance equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BalancedTuple {
    k: u8,
    left_len: u8,
    ns: [u64; MAX_K as usize],
}

impl BalancedTuple {
    pub fn ns(&self) -> &[u64] {
        &self.ns[..self.k as usize]
    }

    pub fn left(&self) -> &[u64] {
        &self.ns[..self.left_len as usize]
    }

    pub fn right(&self) -> &[u64] {
        &self.ns[self.left_len as usize..self.k as usize]
    }
}

/// Canonical kernel vector of one side: sorted `(kernel, coefficient-sum)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
struct KernelKey {
    len: u8,
    items: [(u32, u32); MAX_K as usize],
}

impl KernelKey {
    fn from_side(table: &KernelTable, side: &[u64]) -> Self {
        let mut key = KernelKey::default();
        for &n in side {
            let (a, h) = table.decompose(n);
            key.push(h as u32, a as u32);
        }
        key
    }

    fn push(&mut self, h: u32, a: u32) {
        let len = self.len as usize;
        // insertion keeping kernels sorted, merging coefficient sums
        let mut i = 0;
        while i < len && self.items[i].0 < h {
            i += 1;
        }
        if i < len && self.items[i].0 == h {
            self.items[i].1 += a;
            return;
        }
        let mut j = len;
        while j > i {
            self.items[j] = self.items[j - 1];
            j -= 1;
        }
        self.items[i] = (h, a);
        self.len += 1;
    }
}

/// Odometer over ordered m-tuples with entries in `1..=y`, lexicographic.
struct Odometer {
    values: [u64; MAX_K as usize],
    arity: usize,
    y: u64,
    started: bool,
}

impl Odometer {
    fn new(arity: usize, y: u64) -> Self {
        Odometer { values: [1; MAX_K as usize], arity, y, started: false }
    }

    fn advance(&mut self) -> Option<&[u64]> {
        if !self.started {
            self.started = true;
            return Some(&self.values[..self.arity]);
        }
        let mut i = self.arity;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if self.values[i] < self.y {
                self.values[i] += 1;
                for v in &mut self.values[i + 1..self.arity] {
                    *v = 1;
                }
                return Some(&self.values[..self.arity]);
            }
        }
    }
}

/// Streaming enumeration of every ordered balanced tuple, exactly once.
pub struct BalancedStream {
    k: u8,
    l: u8,
    kernels: KernelTable,
    /// indexed side tuples grouped by kernel vector
    arena: Vec<Vec<[u32; 4]>>,
    index: HashMap<KernelKey, u32>,
    index_is_left: bool,
    stream: Odometer,
    pending: Option<(u32, usize, [u64; MAX_K as usize])>,
}

/// All ordered `(n₁,…,n_k)` with `nᵢ ≤ y` balancing at split `l`.
///
/// Meet-in-the-middle: the side with fewer slots is enumerated into a
/// kernel-vector index (`y^min` tuples), the other side streams against it.
pub fn enumerate_balanced(k: u8, l: u8, y: u64) -> Result<BalancedStream> {
    validate(k, l, y)?;
    let r = k - l;
    let (index_arity, stream_arity, index_is_left) =
        if l <= r { (l, r, true) } else { (r, l, false) };
    let kernels = KernelTable::build(y)?;

    let mut arena: Vec<Vec<[u32; 4]>> = Vec::new();
    let mut index: HashMap<KernelKey, u32> = HashMap::new();
    let mut odo = Odometer::new(index_arity as usize, y);
    while let Some(tuple) = odo.advance() {
        let key = KernelKey::from_side(&kernels, tuple);
        let slot = *index.entry(key).or_insert_with(|| {
            arena.push(Vec::new());
            (arena.len() - 1) as u32
        });
        let mut compact = [0u32; 4];
        for (dst, &n) in compact.iter_mut().zip(tuple) {
            *dst = n as u32;
        }
        arena[slot as usize].push(compact);
    }

    Ok(BalancedStream {
        k,
        l,
        kernels,
        arena,
        index,
        index_is_left,
        stream: Odometer::new(stream_arity as usize, y),
        pending: None,
    })
}

impl BalancedStream {
    fn emit(&self, slot: u32, pos: usize, streamed: &[u64; MAX_K as usize]) -> BalancedTuple {
        let indexed = &self.arena[slot as usize][pos];
        let index_arity = if self.index_is_left { self.l } else { self.k - self.l } as usize;
        let stream_arity = self.k as usize - index_arity;
        let mut ns = [0u64; MAX_K as usize];
        if self.index_is_left {
            for i in 0..index_arity {
                ns[i] = indexed[i] as u64;
            }
            ns[index_arity..index_arity + stream_arity]
                .copy_from_slice(&streamed[..stream_arity]);
        } else {
            ns[..stream_arity].copy_from_slice(&streamed[..stream_arity]);
            for i in 0..index_arity {
                ns[stream_arity + i] = indexed[i] as u64;
            }
        }
        BalancedTuple { k: self.k, left_len: self.l, ns }
    }
}

impl Iterator for BalancedStream {
    type Item = BalancedTuple;

    fn next(&mut self) -> Option<BalancedTuple> {
        loop {
            if let Some((slot, pos, streamed)) = self.pending {
                if pos < self.arena[slot as usize].len() {
                    self.pending = Some((slot, pos + 1, streamed));
                    return Some(self.emit(slot, pos, &streamed));
                }
                self.pending = None;
            }
            let tuple = self.stream.advance()?;
            let key = KernelKey::from_side(&self.kernels, tuple);
            if let Some(&slot) = self.index.get(&key) {
                let mut stash = [0u64; MAX_K as usize];
                stash[..tuple.len()].copy_from_slice(tuple);
                self.pending = Some((slot, 0, stash));
            }
        }
    }
}

/// Truncated series value with bookkeeping.
#[derive(Clone, Copy, Debug)]
pub struct SeriesValue {
    pub k: u8,
    pub l: u8,
    pub y: u64,
    pub value: f64,
    pub n_solutions: u128,
    /// Heuristic tail size `|value|·y^{-1/2}` (Lemma-style y^{-1/2} decay,
    /// implied constant 1).
    pub tail_bound: f64,
}

/// Per-kernel balanced weight table `M(i,j)` and solution counts `C(i,j)`.
struct KernelBlock {
    m: Vec<Vec<Dd>>, // (l+1) × (r+1)
    c: Vec<Vec<u128>>,
}

fn kernel_block(weights: &[f64], l: usize, r: usize) -> KernelBlock {
    // weights[a-1] = w(a²h) for a = 1..=a_max
    let a_max = weights.len();
    let max_side = l.max(r);
    // conv[i][s] = Σ over ordered i-tuples with coefficient sum s of Π w
    let mut conv_w: Vec<Vec<Dd>> = Vec::with_capacity(max_side + 1);
    let mut conv_c: Vec<Vec<u128>> = Vec::with_capacity(max_side + 1);
    conv_w.push(vec![Dd::ONE]); // i = 0: empty product at s = 0
    conv_c.push(vec![1u128]);
    for i in 1..=max_side {
        let prev_w = &conv_w[i - 1];
        let prev_c = &conv_c[i - 1];
        let mut cur_w = vec![Dd::ZERO; i * a_max + 1];
        let mut cur_c = vec![0u128; i * a_max + 1];
        for (s_prev, &pw) in prev_w.iter().enumerate() {
            if prev_c[s_prev] == 0 {
                continue;
            }
            for (a_idx, &w) in weights.iter().enumerate() {
                let s = s_prev + a_idx + 1;
                cur_w[s] = cur_w[s].add(pw.mul_f64(w));
                cur_c[s] += prev_c[s_prev];
            }
        }
        conv_w.push(cur_w);
        conv_c.push(cur_c);
    }
    let mut m = vec![vec![Dd::ZERO; r + 1]; l + 1];
    let mut c = vec![vec![0u128; r + 1]; l + 1];
    m[0][0] = Dd::ONE;
    c[0][0] = 1;
    for i in 1..=l {
        for j in 1..=r {
            let overlap = conv_w[i].len().min(conv_w[j].len());
            let mut acc = Dd::ZERO;
            let mut cnt = 0u128;
            for s in 1..overlap {
                if conv_c[i][s] == 0 || conv_c[j][s] == 0 {
                    continue;
                }
                acc = acc.add(conv_w[i][s].mul(conv_w[j][s]));
                cnt += conv_c[i][s] * conv_c[j][s];
            }
            m[i][j] = acc;
            c[i][j] = cnt;
        }
    }
    KernelBlock { m, c }
}

/// Binomial coefficients up to 9.
fn binom(n: usize, k: usize) -> u64 {
    const TABLE: [[u64; 10]; 10] = {
        let mut t = [[0u64; 10]; 10];
        let mut i = 0;
        while i < 10 {
            t[i][0] = 1;
            let mut j = 1;
            while j <= i {
                t[i][j] = t[i - 1][j - 1] + if j < i { t[i - 1][j] } else { 0 };
                j += 1;
            }
            i += 1;
        }
        t
    };
    TABLE[n][k]
}

/// Kernel-blocked evaluation of `s_{k;l}(f; y)` with solution counts.
///
/// `f` is the multiplicative weight; terms are `Π f(nᵢ)·nᵢ^{-3/4}` over
/// balanced tuples. Deterministic fixed reduction: kernels ascending,
/// coefficient sums ascending.
pub fn series_partial_with(f: impl Fn(u64) -> f64, k: u8, l: u8, y: u64) -> Result<SeriesValue> {
    validate(k, l, y)?;
    let l_us = l as usize;
    let r_us = (k - l) as usize;
    let kernels = KernelTable::build(y)?;

    // poly[i][j]: combined weight over kernels processed so far, for i left
    // and j right slots already committed (slot assignment via binomials)
    let mut poly_w = vec![vec![Dd::ZERO; r_us + 1]; l_us + 1];
    let mut poly_c = vec![vec![0u128; r_us + 1]; l_us + 1];
    poly_w[0][0] = Dd::ONE;
    poly_c[0][0] = 1;

    let mut weights = Vec::new();
    for h in 1..=y {
        // squarefree kernels only: h is its own kernel
        let (a_h, h_h) = kernels.decompose(h);
        if a_h != 1 || h_h != h {
            continue;
        }
        let a_max = num_integer::Roots::sqrt(&(y / h));
        if a_max == 0 {
            continue;
        }
        weights.clear();
        for a in 1..=a_max {
            let n = a * a * h;
            weights.push(weight(f(n), n));
        }
        let block = kernel_block(&weights, l_us, r_us);
        // skip kernels that cannot balance (only the trivial (0,0) entry)
        let mut nontrivial = false;
        for i in 1..=l_us {
            for j in 1..=r_us {
                if block.c[i][j] != 0 {
                    nontrivial = true;
                }
            }
        }
        if !nontrivial {
            continue;
        }
        let mut next_w = vec![vec![Dd::ZERO; r_us + 1]; l_us + 1];
        let mut next_c = vec![vec![0u128; r_us + 1]; l_us + 1];
        for i in 0..=l_us {
            for j in 0..=r_us {
                let pw = poly_w[i][j];
                let pc = poly_c[i][j];
                if pc == 0 {
                    continue;
                }
                for bi in 0..=(l_us - i) {
                    for bj in 0..=(r_us - j) {
                        if block.c[bi][bj] == 0 {
                            continue;
                        }
                        let ways = binom(i + bi, bi) * binom(j + bj, bj);
                        let contrib = pw.mul(block.m[bi][bj]).mul_f64(ways as f64);
                        next_w[i + bi][j + bj] = next_w[i + bi][j + bj].add(contrib);
                        next_c[i + bi][j + bj] += pc * block.c[bi][bj] * ways as u128;
                    }
                }
            }
        }
        poly_w = next_w;
        poly_c = next_c;
    }

    let value = poly_w[l_us][r_us].to_f64();
    let n_solutions = poly_c[l_us][r_us];
    Ok(SeriesValue {
        k,
        l,
        y,
        value,
        n_solutions,
        tail_bound: value.abs() * (y as f64).powf(-0.5),
    })
}

/// `s_{k;l}(d; y)` with the divisor-function weight from a sieved table.
pub fn series_partial(table: &DivisorTable, k: u8, l: u8, y: u64) -> Result<SeriesValue> {
    if y > table.limit() {
        return Err(Error::invalid(format!(
            "series truncation y={y} exceeds table limit {}",
            table.limit()
        )));
    }
    series_partial_with(|n| table.d(n) as f64, k, l, y)
}

/// Same sum, evaluated by consuming the tuple stream (cross-check route and
/// the path used when tuples come from a cache).
pub fn series_partial_streamed(
    table: &DivisorTable,
    k: u8,
    l: u8,
    y: u64,
) -> Result<SeriesValue> {
    if y > table.limit() {
        return Err(Error::invalid(format!(
            "series truncation y={y} exceeds table limit {}",
            table.limit()
        )));
    }
    let mut acc = DdAcc::new();
    let mut count = 0u128;
    for tuple in enumerate_balanced(k, l, y)? {
        let mut term = Dd::ONE;
        for &n in tuple.ns() {
            term = term.mul_f64(weight(table.d(n) as f64, n));
        }
        acc.add_dd(term);
        count += 1;
    }
    let value = acc.total();
    Ok(SeriesValue {
        k,
        l,
        y,
        value,
        n_solutions: count,
        tail_bound: value.abs() * (y as f64).powf(-0.5),
    })
}

/// Partial sum of Tsang's constant c₁ in its (α, β, h) parametrization:
/// terms with (α+β)²h ≤ Y, h squarefree. Coincides exactly with
/// `s_{3;1}(d; Y)`.
pub fn tsang_c1_partial(table: &DivisorTable, y: u64) -> Result<f64> {
    if y == 0 {
        return Err(Error::invalid("Y must be >= 1"));
    }
    if y > table.limit() {
        return Err(Error::invalid(format!(
            "Y={y} exceeds table limit {}",
            table.limit()
        )));
    }
    let kernels = KernelTable::build(y.max(2))?;
    let mut acc = DdAcc::new();
    for h in 1..=y / 4 {
        let (a_h, _) = kernels.decompose(h);
        if a_h != 1 {
            continue; // |μ(h)| = 0
        }
        let s_max = num_integer::Roots::sqrt(&(y / h));
        for s in 2..=s_max {
            let w_s = weight(table.d(s * s * h) as f64, s * s * h);
            for alpha in 1..s {
                let beta = s - alpha;
                let w_a = weight(table.d(alpha * alpha * h) as f64, alpha * alpha * h);
                let w_b = weight(table.d(beta * beta * h) as f64, beta * beta * h);
                let term = Dd::from_f64(w_a).mul_f64(w_b).mul_f64(w_s);
                acc.add_dd(term);
            }
        }
    }
    Ok(acc.total())
}

/// Main-term coefficient of `∫ Δ^k`: closed form for k = 2, truncated
/// singular series otherwise.
pub fn coefficient_ck(table: &DivisorTable, k: u8, y: u64) -> Result<f64> {
    match k {
        2 => {
            let z32 = zeta(1.5)?;
            let z3 = zeta(3.0)?;
            Ok(z32.powi(4) / (6.0 * PI * PI * z3))
        }
        3 => Ok(3.0 * tsang_c1_partial(table, y)? / (28.0 * PI.powi(3))),
        4 => Ok(3.0 * series_partial(table, 4, 2, y)?.value / (64.0 * PI.powi(4))),
        7 => {
            let s3 = series_partial(table, 7, 3, y)?.value;
            let s2 = series_partial(table, 7, 2, y)?.value;
            let s1 = series_partial(table, 7, 1, y)?.value;
            Ok(7.0 * (5.0 * s3 - 3.0 * s2 - s1) / (2816.0 * PI.powi(7)))
        }
        other => Err(Error::invalid(format!(
            "no main-term coefficient for k={other} (supported: 2, 3, 4, 7)"
        ))),
    }
}

/// The paper-style coupling `y = T^{1/4}`, exposed as a helper only.
pub fn truncation_for(t: f64) -> u64 {
    (t.powf(0.25).floor() as u64).max(1)
}

pub mod cache {
    //! On-disk cache of balanced-tuple lists, keyed and named by a content
    //! hash of `(k, l, y)`. Magic `SSC1` + checksum.

    use std::fs::File;
    use std::io::{BufReader, BufWriter, Read, Seek, SeekFrom, Write};
    use std::path::{Path, PathBuf};

    use super::BalancedTuple;
    use crate::cacheio::{fnv1a64, Fnv1a};
    use crate::error::{Error, Result};
    use crate::numeric::kahan::DdAcc;

    const MAGIC: &[u8; 4] = b"SSC1";

    pub fn cache_path(dir: &Path, k: u8, l: u8, y: u64) -> PathBuf {
        let tag = fnv1a64(format!("balanced:{k}:{l}:{y}").as_bytes());
        dir.join(format!("tuples_k{k}_l{l}_y{y}_{tag:016x}.bin"))
    }

    pub fn write_tuples(dir: &Path, k: u8, l: u8, y: u64, tuples: &[BalancedTuple]) -> Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = cache_path(dir, k, l, y);
        let mut payload = Vec::with_capacity(tuples.len() * k as usize * 4);
        for t in tuples {
            for &n in t.ns() {
                payload.extend_from_slice(&(n as u32).to_le_bytes());
            }
        }
        let mut w = BufWriter::new(File::create(&path)?);
        w.write_all(MAGIC)?;
        w.write_all(&[k, l])?;
        w.write_all(&y.to_le_bytes())?;
        w.write_all(&(tuples.len() as u64).to_le_bytes())?;
        w.write_all(&fnv1a64(&payload).to_le_bytes())?;
        w.write_all(&payload)?;
        w.flush()?;
        Ok(path)
    }

    /// Stream tuples to disk while folding them into a dd accumulator; the
    /// count and checksum are patched into the header at the end.
    pub fn write_tuples_stream(
        dir: &Path,
        k: u8,
        l: u8,
        y: u64,
        tuples: impl Iterator<Item = BalancedTuple>,
        mut fold: impl FnMut(&mut DdAcc, &BalancedTuple),
    ) -> Result<(PathBuf, f64, u64)> {
        std::fs::create_dir_all(dir)?;
        let path = cache_path(dir, k, l, y);
        let mut w = BufWriter::new(File::create(&path)?);
        w.write_all(MAGIC)?;
        w.write_all(&[k, l])?;
        w.write_all(&y.to_le_bytes())?;
        w.write_all(&0u64.to_le_bytes())?; // count, patched below
        w.write_all(&0u64.to_le_bytes())?; // checksum, patched below
        let mut hash = Fnv1a::new();
        let mut acc = DdAcc::new();
        let mut count = 0u64;
        let mut buf = [0u8; 4 * super::MAX_K as usize];
        for tuple in tuples {
            let used = 4 * k as usize;
            for (slot, &n) in tuple.ns().iter().enumerate() {
                buf[4 * slot..4 * slot + 4].copy_from_slice(&(n as u32).to_le_bytes());
            }
            hash.update(&buf[..used]);
            w.write_all(&buf[..used])?;
            fold(&mut acc, &tuple);
            count += 1;
        }
        w.flush()?;
        let mut file = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        file.seek(SeekFrom::Start(14))?;
        file.write_all(&count.to_le_bytes())?;
        file.write_all(&hash.finish().to_le_bytes())?;
        file.sync_all()?;
        Ok((path, acc.total(), count))
    }

    /// Stream-read a cached tuple list, folding each tuple; `None` when the
    /// cache file does not exist. The fold result is only meaningful on
    /// `Ok(Some(..))` — a checksum mismatch surfaces as a cache error.
    pub fn fold_tuples(
        dir: &Path,
        k: u8,
        l: u8,
        y: u64,
        mut fold: impl FnMut(&mut DdAcc, &BalancedTuple),
    ) -> Result<Option<(f64, u64)>> {
        let path = cache_path(dir, k, l, y);
        if !path.exists() {
            return Ok(None);
        }
        let mut r = BufReader::new(File::open(&path)?);
        let mut header = [0u8; 4 + 2 + 8 + 8 + 8];
        r.read_exact(&mut header)
            .map_err(|_| Error::cache(format!("{}: truncated header", path.display())))?;
        if &header[0..4] != MAGIC || header[4] != k || header[5] != l {
            return Err(Error::cache(format!("{}: header mismatch", path.display())));
        }
        let y_stored = u64::from_le_bytes(header[6..14].try_into().unwrap());
        let count = u64::from_le_bytes(header[14..22].try_into().unwrap());
        let checksum = u64::from_le_bytes(header[22..30].try_into().unwrap());
        if y_stored != y {
            return Err(Error::cache(format!("{}: parameter mismatch", path.display())));
        }
        let mut hash = Fnv1a::new();
        let mut acc = DdAcc::new();
        let mut buf = vec![0u8; 4 * k as usize];
        for _ in 0..count {
            r.read_exact(&mut buf)
                .map_err(|_| Error::cache(format!("{}: truncated payload", path.display())))?;
            hash.update(&buf);
            let mut ns = [0u64; super::MAX_K as usize];
            for (slot, chunk) in ns.iter_mut().zip(buf.chunks_exact(4)) {
                let v = u32::from_le_bytes(chunk.try_into().unwrap()) as u64;
                // out-of-domain entries mean corruption; fail before folding
                if v == 0 || v > y {
                    return Err(Error::cache(format!(
                        "{}: entry {v} outside 1..={y}",
                        path.display()
                    )));
                }
                *slot = v;
            }
            let tuple = BalancedTuple { k, left_len: l, ns };
            fold(&mut acc, &tuple);
        }
        if hash.finish() != checksum {
            return Err(Error::cache(format!("{}: checksum mismatch", path.display())));
        }
        Ok(Some((acc.total(), count)))
    }

    pub fn read_tuples(dir: &Path, k: u8, l: u8, y: u64) -> Result<Option<Vec<BalancedTuple>>> {
        let path = cache_path(dir, k, l, y);
        if !path.exists() {
            return Ok(None);
        }
        let mut r = BufReader::new(File::open(&path)?);
        let mut header = [0u8; 4 + 2 + 8 + 8 + 8];
        r.read_exact(&mut header)
            .map_err(|_| Error::cache(format!("{}: truncated header", path.display())))?;
        if &header[0..4] != MAGIC || header[4] != k || header[5] != l {
            return Err(Error::cache(format!("{}: header mismatch", path.display())));
        }
        let y_stored = u64::from_le_bytes(header[6..14].try_into().unwrap());
        let count = u64::from_le_bytes(header[14..22].try_into().unwrap());
        let checksum = u64::from_le_bytes(header[22..30].try_into().unwrap());
        if y_stored != y {
            return Err(Error::cache(format!("{}: parameter mismatch", path.display())));
        }
        let mut payload = vec![0u8; count as usize * k as usize * 4];
        r.read_exact(&mut payload)
            .map_err(|_| Error::cache(format!("{}: truncated payload", path.display())))?;
        if fnv1a64(&payload) != checksum {
            return Err(Error::cache(format!("{}: checksum mismatch", path.display())));
        }
        let mut tuples = Vec::with_capacity(count as usize);
        let mut chunks = payload.chunks_exact(4);
        for _ in 0..count {
            let mut ns = [0u64; super::MAX_K as usize];
            for slot in ns.iter_mut().take(k as usize) {
                let raw = chunks.next().unwrap();
                *slot = u32::from_le_bytes(raw.try_into().unwrap()) as u64;
            }
            tuples.push(BalancedTuple { k, left_len: l, ns });
        }
        Ok(Some(tuples))
    }
}
