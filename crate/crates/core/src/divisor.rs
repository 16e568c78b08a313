//! The divisor function `d(n)`, its summatory function `D(x)`, and the
//! error term `Δ(x) = D(x) − x·ln x − (2γ−1)x`.
//!
//! `d` values come from a segmented sieve: within a block, the power of 2 is
//! split off by `trailing_zeros`, every odd prime `p ≤ √n` divides out its
//! exact exponent from the running cofactor, and whatever survives is a
//! single large prime contributing a factor 2. Blocks are independent, so
//! table construction parallelizes over block index and streaming needs only
//! one block of working memory.
//!
//! `D(x)` is evaluated in `O(√x)` by the hyperbola identity
//! `D(x) = 2·Σ_{n≤√x} ⌊x/n⌋ − ⌊√x⌋²`. `Δ` combines the exact integer `D`
//! with `x ln x` in double precision, so a `Δ` value carries a few ulps of
//! the formula — that is the whole error model of this module.

use num_integer::Roots;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::EULER_GAMMA;

/// Default cap on sieve allocation (bytes of d-values).
pub const DEFAULT_MEMORY_BUDGET: u64 = 6 << 30;

/// Default sieve block length.
pub const DEFAULT_BLOCK_SIZE: u64 = 1 << 20;

/// Odd primes up to `limit` inclusive (2 is handled separately by the sieve).
fn odd_primes_to(limit: u64) -> Vec<u32> {
    if limit < 3 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in (3..=n).step_by(2) {
        if !composite[p] {
            primes.push(p as u32);
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += 2 * p;
            }
        }
    }
    primes
}

/// Fill `out[i] = d(lo + i)` for a block starting at `lo ≥ 1`.
///
/// `primes` must contain all odd primes up to `√(lo + out.len() − 1)`.
fn fill_block(primes: &[u32], lo: u64, out: &mut [u32], rem: &mut Vec<u64>) {
    let len = out.len() as u64;
    let hi = lo + len; // exclusive
    rem.clear();
    rem.reserve(out.len());
    for i in 0..len {
        let n = lo + i;
        let e2 = n.trailing_zeros();
        out[i as usize] = e2 + 1;
        rem.push(n >> e2);
    }
    for &p in primes {
        let p = p as u64;
        if p * p >= hi {
            break;
        }
        let first = lo.div_ceil(p) * p;
        let mut m = first;
        while m < hi {
            let idx = (m - lo) as usize;
            let mut e = 1u32;
            let mut r = rem[idx] / p;
            while r % p == 0 {
                r /= p;
                e += 1;
            }
            rem[idx] = r;
            out[idx] *= e + 1;
            m += p;
        }
    }
    for i in 0..out.len() {
        if rem[i] > 1 {
            out[i] *= 2;
        }
    }
}

/// Sieved `d(1..=limit)` in block layout.
#[derive(Debug)]
pub struct DivisorTable {
    limit: u64,
    block_size: u64,
    values: Vec<u32>,
}

impl DivisorTable {
    pub fn build(limit: u64) -> Result<Self> {
        Self::build_with(limit, DEFAULT_BLOCK_SIZE, DEFAULT_MEMORY_BUDGET)
    }

    pub fn build_with(limit: u64, block_size: u64, memory_budget: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::invalid("sieve limit must be >= 1"));
        }
        if block_size == 0 {
            return Err(Error::invalid("block size must be >= 1"));
        }
        let required = limit.saturating_mul(4);
        if required > memory_budget {
            return Err(Error::resource(format!(
                "divisor table for limit {limit} requires {required} bytes (budget {memory_budget})"
            )));
        }
        let primes = odd_primes_to(limit.sqrt() + 1);
        let mut values = vec![0u32; limit as usize];
        values
            .par_chunks_mut(block_size as usize)
            .enumerate()
            .for_each(|(b, chunk)| {
                let lo = 1 + b as u64 * block_size;
                let mut rem = Vec::new();
                fill_block(&primes, lo, chunk, &mut rem);
            });
        Ok(DivisorTable { limit, block_size, values })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn block_size(&self) -> u64 {
        self.block_size
    }

    #[inline]
    pub fn d(&self, n: u64) -> u32 {
        self.values[(n - 1) as usize]
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Σ_{n≤limit} d(n).
    pub fn sum(&self) -> u64 {
        self.values.iter().map(|&v| v as u64).sum()
    }
}

/// Spec-facing constructor name.
pub fn sieve_divisor_table(limit: u64) -> Result<DivisorTable> {
    DivisorTable::build(limit)
}

/// Exact integer floor of a finite `x ≥ 0`; the f64 is taken at face value.
fn exact_floor(x: f64) -> u64 {
    debug_assert!(x >= 0.0 && x.is_finite());
    x.floor() as u64
}

/// `D(x) = Σ_{n≤x} d(n)` by the hyperbola identity, O(√x).
pub fn summatory_d(x: f64) -> Result<u64> {
    if !(x >= 1.0) || !x.is_finite() {
        return Err(Error::invalid(format!("summatory_d requires x >= 1, got {x}")));
    }
    let n = exact_floor(x);
    Ok(summatory_d_u64(n))
}

pub(crate) fn summatory_d_u64(n: u64) -> u64 {
    let rt = n.sqrt();
    let mut sum = 0u64;
    for k in 1..=rt {
        sum += n / k;
    }
    2 * sum - rt * rt
}

/// One evaluation of the error term at `x`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeltaSample {
    pub x: f64,
    /// Exact `D(x)`.
    pub summatory: u64,
    /// `Δ(x) = D(x) − x·ln x − (2γ−1)x`, a few ulps of the formula.
    pub delta: f64,
    pub gamma_const: f64,
}

/// `Δ(x)` from an exact `D` value.
#[inline]
pub fn delta_from_summatory(x: f64, d: u64) -> f64 {
    d as f64 - x * x.ln() - (2.0 * EULER_GAMMA - 1.0) * x
}

/// `Δ(x)`; at integer `x` the sum includes the term `n = x` (right-continuous).
pub fn delta_at(x: f64) -> Result<DeltaSample> {
    let d = summatory_d(x)?;
    Ok(DeltaSample {
        x,
        summatory: d,
        delta: delta_from_summatory(x, d),
        gamma_const: EULER_GAMMA,
    })
}

/// Maximal subinterval of `[t0, t1)` on which `D` is constant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeltaPiece {
    pub lo: f64,
    pub hi: f64,
    /// `D(x)` for every `x` in `[lo, hi)`.
    pub summatory: u64,
}

/// Streaming pieces of constant `D` over `[t0, t1)`, fed by a single
/// segmented sieve pass; only the initial `D(⌊t0⌋)` uses the hyperbola.
pub struct DeltaStream {
    t1: f64,
    n: u64,       // current integer: piece is [max(t0,n), min(t1,n+1))
    n_end: u64,   // floor(t1)
    d: u64,       // D(n)
    cursor: f64,  // left edge of next piece
    primes: Vec<u32>,
    block: Vec<u32>,
    block_lo: u64,
    block_size: u64,
    rem: Vec<u64>,
    done: bool,
}

/// Pieces of constant `D` covering `[t0, t1)` in increasing order.
pub fn delta_stream(t0: f64, t1: f64, block: u64) -> Result<DeltaStream> {
    if !(t0 >= 1.0) || !t0.is_finite() || !t1.is_finite() {
        return Err(Error::invalid(format!("delta_stream requires 1 <= t0 < t1, got ({t0}, {t1})")));
    }
    if !(t0 < t1) {
        return Err(Error::invalid(format!("delta_stream requires t0 < t1, got ({t0}, {t1})")));
    }
    if block == 0 {
        return Err(Error::invalid("delta_stream block must be >= 1"));
    }
    let n0 = exact_floor(t0);
    let n_end = exact_floor(t1);
    let primes = odd_primes_to((n_end + 1).sqrt() + 1);
    Ok(DeltaStream {
        t1,
        n: n0,
        n_end,
        d: summatory_d_u64(n0),
        cursor: t0,
        primes,
        block: Vec::new(),
        block_lo: 0,
        block_size: block,
        rem: Vec::new(),
        done: false,
    })
}

impl DeltaStream {
    fn d_of(&mut self, n: u64) -> u64 {
        if self.block.is_empty() || n < self.block_lo || n >= self.block_lo + self.block.len() as u64 {
            let len = self.block_size.min(1 + self.n_end - n) as usize;
            self.block.resize(len, 0);
            fill_block(&self.primes, n, &mut self.block, &mut self.rem);
            self.block_lo = n;
        }
        self.block[(n - self.block_lo) as usize] as u64
    }
}

impl Iterator for DeltaStream {
    type Item = DeltaPiece;

    fn next(&mut self) -> Option<DeltaPiece> {
        if self.done {
            return None;
        }
        let lo = self.cursor;
        let hi = ((self.n + 1) as f64).min(self.t1);
        if !(lo < hi) {
            self.done = true;
            return None;
        }
        let piece = DeltaPiece { lo, hi, summatory: self.d };
        if hi >= self.t1 {
            self.done = true;
        } else {
            self.n += 1;
            let dn = self.d_of(self.n);
            self.d += dn;
            self.cursor = self.n as f64;
        }
        Some(piece)
    }
}

pub mod cache {
    //! Binary block cache for sieved tables: magic `DDT1`, limit, block size,
    //! FNV-1a checksum of the payload, then raw little-endian u32 values.

    use std::fs::File;
    use std::io::{BufReader, BufWriter, Read, Write};
    use std::path::Path;

    use super::DivisorTable;
    use crate::cacheio::fnv1a64;
    use crate::error::{Error, Result};

    const MAGIC: &[u8; 4] = b"DDT1";

    fn value_bytes(values: &[u32]) -> Vec<u8> {
        let mut out = Vec::with_capacity(values.len() * 4);
        for &v in values {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    pub fn write(table: &DivisorTable, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        let payload = value_bytes(&table.values);
        w.write_all(MAGIC)?;
        w.write_all(&table.limit.to_le_bytes())?;
        w.write_all(&table.block_size.to_le_bytes())?;
        w.write_all(&fnv1a64(&payload).to_le_bytes())?;
        w.write_all(&payload)?;
        w.flush()?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<DivisorTable> {
        let mut r = BufReader::new(File::open(path)?);
        let mut header = [0u8; 4 + 8 + 8 + 8];
        r.read_exact(&mut header)
            .map_err(|_| Error::cache(format!("{}: truncated header", path.display())))?;
        if &header[0..4] != MAGIC {
            return Err(Error::cache(format!("{}: bad magic", path.display())));
        }
        let limit = u64::from_le_bytes(header[4..12].try_into().unwrap());
        let block_size = u64::from_le_bytes(header[12..20].try_into().unwrap());
        let checksum = u64::from_le_bytes(header[20..28].try_into().unwrap());
        if limit == 0 || block_size == 0 || limit > (1 << 40) {
            return Err(Error::cache(format!("{}: implausible header", path.display())));
        }
        let mut payload = vec![0u8; (limit * 4) as usize];
        r.read_exact(&mut payload)
            .map_err(|_| Error::cache(format!("{}: truncated payload", path.display())))?;
        if fnv1a64(&payload) != checksum {
            return Err(Error::cache(format!("{}: checksum mismatch", path.display())));
        }
        let values: Vec<u32> = payload
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
            .collect();
        Ok(DivisorTable { limit, block_size, values })
    }
}
