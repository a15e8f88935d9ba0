//! Betti-number oracles: Koszul homology over the polynomial ring, and a
//! degreewise minimal free resolution of the residue field over a quotient
//! ring, truncated in homological and internal degree.

use super::pieces::{ideal_piece, RrefBasis, SparseVec};
use super::{monomial_index_map, monomials, Exponents, GeneratorSet, PolyRing};
use crate::rational::Rational;
use std::collections::{BTreeMap, HashMap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("computation exceeds the configured bounds: {0}")]
pub struct BoundsError(pub String);

/// Size caps for the Betti oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BettiBounds {
    pub max_vars: usize,
    pub max_degree: u32,
}

impl BettiBounds {
    pub fn koszul_default() -> Self {
        BettiBounds {
            max_vars: 8,
            max_degree: 8,
        }
    }

    pub fn resolution_default() -> Self {
        BettiBounds {
            max_vars: 6,
            max_degree: 6,
        }
    }
}

/// Quotient ring R = S/I held degreewise: standard monomials and reduction
/// tables per degree up to a bound.
pub struct QuotientCtx {
    pub ring: PolyRing,
    pub max_deg: u32,
    mons: Vec<Vec<Exponents>>,
    mon_idx: Vec<HashMap<Exponents, usize>>,
    /// Standard monomials per degree, as indices into `mons[d]`.
    std_mons: Vec<Vec<usize>>,
    /// Reduction of each monomial to standard-monomial coordinates.
    reduce: Vec<Vec<Vec<(usize, Rational)>>>,
}

impl QuotientCtx {
    pub fn build(ring: &PolyRing, gens: &GeneratorSet, max_deg: u32) -> Self {
        let n = ring.num_vars();
        let mut mons = Vec::new();
        let mut mon_idx = Vec::new();
        let mut std_mons = Vec::new();
        let mut reduce = Vec::new();
        for d in 0..=max_deg {
            let ms = monomials(n, d);
            let idx = monomial_index_map(&ms);
            let piece = ideal_piece(ring, gens, d);
            let pivot_of: HashMap<usize, usize> = piece
                .basis
                .rows
                .iter()
                .enumerate()
                .map(|(r, (p, _))| (*p, r))
                .collect();
            let std: Vec<usize> = (0..ms.len())
                .filter(|i| !pivot_of.contains_key(i))
                .collect();
            let std_pos: HashMap<usize, usize> =
                std.iter().enumerate().map(|(k, &i)| (i, k)).collect();
            let mut red: Vec<Vec<(usize, Rational)>> = Vec::with_capacity(ms.len());
            for i in 0..ms.len() {
                if let Some(&r) = pivot_of.get(&i) {
                    // The echelon row is pivot + tail over standard monomials,
                    // so the monomial reduces to minus its tail.
                    let row = &piece.basis.rows[r].1;
                    red.push(
                        row.iter()
                            .skip(1)
                            .map(|(j, c)| (std_pos[j], -c))
                            .collect(),
                    );
                } else {
                    red.push(vec![(std_pos[&i], Rational::one())]);
                }
            }
            mons.push(ms);
            mon_idx.push(idx);
            std_mons.push(std);
            reduce.push(red);
        }
        QuotientCtx {
            ring: ring.clone(),
            max_deg,
            mons,
            mon_idx,
            std_mons,
            reduce,
        }
    }

    /// dim R_d.
    pub fn dim(&self, d: u32) -> usize {
        self.std_mons[d as usize].len()
    }

    /// The exponent vector of the k-th standard monomial of degree d.
    pub fn std_exponents(&self, d: u32, k: usize) -> &Exponents {
        &self.mons[d as usize][self.std_mons[d as usize][k]]
    }

    /// Multiplies a degree-d standard monomial by an arbitrary monomial and
    /// reduces, returning standard coordinates in degree d + deg(m).
    pub fn mult_std_by_monomial(&self, d: u32, k: usize, m: &[u32]) -> &[(usize, Rational)] {
        let target = d + m.iter().sum::<u32>();
        let e: Exponents = self.std_exponents(d, k)
            .iter()
            .zip(m)
            .map(|(a, b)| a + b)
            .collect();
        let ti = self.mon_idx[target as usize][&e];
        &self.reduce[target as usize][ti]
    }
}

/// Graded Betti table entries beta_{i,j}.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, u32), usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: u32) -> usize {
        *self.entries.get(&(i, j)).unwrap_or(&0)
    }

    pub fn max_slope(&self) -> Option<i64> {
        self.entries
            .iter()
            .filter(|(_, &v)| v > 0)
            .map(|(&(i, j), _)| j as i64 - i as i64)
            .max()
    }
}

/// beta^S_{i,j}(S/I): dimension of the degree-j strand of the i-th homology
/// of the Koszul complex on all variables with coefficients in S/I.
pub fn koszul_homology_betti(
    ring: &PolyRing,
    gens: &GeneratorSet,
    i: usize,
    j: u32,
    bounds: &BettiBounds,
) -> Result<usize, BoundsError> {
    let n = ring.num_vars();
    if n > bounds.max_vars {
        return Err(BoundsError(format!(
            "{} variables exceed the cap {}",
            n, bounds.max_vars
        )));
    }
    if j > bounds.max_degree {
        return Err(BoundsError(format!(
            "internal degree {} exceeds the cap {}",
            j, bounds.max_degree
        )));
    }
    if i > n {
        return Ok(0);
    }
    let ctx = QuotientCtx::build(ring, gens, j);
    let w_dim = |k: usize| -> usize {
        if k > n || (j as i64 - k as i64) < 0 {
            return 0;
        }
        super::binomial(n, k) * ctx.dim(j - k as u32)
    };
    let rank_d = |k: usize| koszul_differential_rank(&ctx, n, k, j);
    let dim_wi = w_dim(i);
    let rank_in = if i + 1 <= n { rank_d(i + 1) } else { 0 };
    let rank_out = if i >= 1 { rank_d(i) } else { 0 };
    Ok(dim_wi - rank_in - rank_out)
}

/// Full table of beta^S_{i,j}(S/I) for i <= n, j <= jmax, sharing one
/// quotient context and one rank computation per differential.
pub fn koszul_betti_table(
    ring: &PolyRing,
    gens: &GeneratorSet,
    jmax: u32,
    bounds: &BettiBounds,
) -> Result<BettiTable, BoundsError> {
    let n = ring.num_vars();
    if n > bounds.max_vars {
        return Err(BoundsError(format!(
            "{} variables exceed the cap {}",
            n, bounds.max_vars
        )));
    }
    if jmax > bounds.max_degree {
        return Err(BoundsError(format!(
            "internal degree {} exceeds the cap {}",
            jmax, bounds.max_degree
        )));
    }
    let ctx = QuotientCtx::build(ring, gens, jmax);
    let mut table = BettiTable::default();
    for j in 0..=jmax {
        let mut ranks = vec![0usize; n + 2];
        for (k, rank) in ranks.iter_mut().enumerate().take(n + 2).skip(1) {
            *rank = koszul_differential_rank(&ctx, n, k, j);
        }
        for i in 0..=n.min(j as usize) {
            let dim = if j as i64 - i as i64 >= 0 {
                super::binomial(n, i) * ctx.dim(j - i as u32)
            } else {
                0
            };
            if dim == 0 {
                continue;
            }
            let beta = dim - ranks[i + 1] - if i >= 1 { ranks[i] } else { 0 };
            if beta > 0 {
                table.entries.insert((i, j), beta);
            }
        }
    }
    Ok(table)
}

/// Rank of the Koszul differential Lambda^k tensor (S/I)_{j-k} ->
/// Lambda^{k-1} tensor (S/I)_{j-k+1}.
fn koszul_differential_rank(ctx: &QuotientCtx, n: usize, k: usize, j: u32) -> usize {
    if k == 0 || k > n || (j as i64) < k as i64 {
        return 0;
    }
    let d_src = j - k as u32;
    let d_tgt = j - k as u32 + 1;
    if ctx.dim(d_src) == 0 {
        return 0;
    }
    let subsets_src = subsets(n, k);
    let subsets_tgt = subsets(n, k - 1);
    let tgt_index: HashMap<Vec<usize>, usize> = subsets_tgt
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    let h_tgt = ctx.dim(d_tgt);
    let mut basis = RrefBasis::new(subsets_tgt.len() * h_tgt);
    for s in &subsets_src {
        for u in 0..ctx.dim(d_src) {
            let mut img: BTreeMap<usize, Rational> = BTreeMap::new();
            for (pos, &var) in s.iter().enumerate() {
                let sign = if pos % 2 == 0 {
                    Rational::one()
                } else {
                    Rational::from_int(-1)
                };
                let mut face = s.clone();
                face.remove(pos);
                let block = tgt_index[&face] * h_tgt;
                let mut m = vec![0u32; n];
                m[var] = 1;
                for (std_k, c) in ctx.mult_std_by_monomial(d_src, u, &m) {
                    let entry = img.entry(block + std_k).or_insert_with(Rational::zero);
                    let delta = &sign * c;
                    *entry += &delta;
                }
            }
            let row: SparseVec = img.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            basis.insert(row);
        }
    }
    basis.dim()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, start: usize, n: usize, k: usize) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(out, cur, i + 1, n, k);
            cur.pop();
        }
    }
    rec(&mut out, &mut cur, 0, n, k);
    out
}

/// Graded Betti numbers beta^{R}_{i,j}(k) for R = S/I, computed by building a
/// minimal graded free resolution of k over R degreewise: each syzygy module
/// is held as exact kernels per degree, and new generators are chosen in the
/// lowest degree first, outside the maximal-ideal multiples of earlier ones.
pub fn quotient_res_betti(
    ring: &PolyRing,
    gens: &GeneratorSet,
    imax: usize,
    jmax: u32,
    bounds: &BettiBounds,
) -> Result<BettiTable, BoundsError> {
    let n = ring.num_vars();
    if n > bounds.max_vars {
        return Err(BoundsError(format!(
            "{} variables exceed the cap {}",
            n, bounds.max_vars
        )));
    }
    if jmax > bounds.max_degree {
        return Err(BoundsError(format!(
            "internal degree {} exceeds the cap {}",
            jmax, bounds.max_degree
        )));
    }
    let ctx = QuotientCtx::build(ring, gens, jmax);
    let mut table = BettiTable::default();
    table.entries.insert((0, 0), 1);

    // F_0 = R with one generator in degree 0; the first syzygy module is the
    // maximal ideal, whose degree-j piece is all of R_j.
    let f0 = FreeModule {
        gen_degs: vec![0],
        gen_vecs: vec![],
    };
    let mut prev = f0;
    // Kernel bases per degree for the current syzygy module inside `prev`.
    let mut kernels: Vec<RrefBasis> = (0..=jmax)
        .map(|j| {
            let dimj = ctx.dim(j);
            let mut b = RrefBasis::new(dimj);
            if j >= 1 {
                for t in 0..dimj {
                    b.insert(vec![(t, Rational::one())]);
                }
            }
            b
        })
        .collect();

    for i in 1..=imax {
        // Choose minimal generators degree by degree.
        let mut chosen: Vec<(u32, SparseVec)> = Vec::new();
        for j in 1..=jmax {
            let offs = gen_offsets(&ctx, &prev.gen_degs, j);
            let total = *offs.last().unwrap();
            let mut span = RrefBasis::new(total);
            // Maximal-ideal multiples of all lower-degree module elements:
            // variables times the degree j-1 kernel basis.
            let below = &kernels[(j - 1) as usize];
            for (_, vec) in &below.rows {
                for var in 0..n {
                    let mut m = vec![0u32; n];
                    m[var] = 1;
                    let img =
                        multiply_vec_by_monomial(&ctx, &prev.gen_degs, j - 1, vec, &m, &offs);
                    span.insert(img);
                }
            }
            for (_, vec) in &kernels[j as usize].rows {
                if span.insert(vec.clone()) {
                    table.entries.insert((i, j), table.get(i, j) + 1);
                    chosen.push((j, vec.clone()));
                }
            }
        }
        if i == imax {
            break;
        }
        // Next syzygy module: kernel of F_i -> F_{i-1} degreewise.
        let fi = FreeModule {
            gen_degs: chosen.iter().map(|(d, _)| *d).collect(),
            gen_vecs: chosen,
        };
        let mut next_kernels: Vec<RrefBasis> = Vec::with_capacity(jmax as usize + 1);
        for j in 0..=jmax {
            let offs_prev = gen_offsets(&ctx, &prev.gen_degs, j);
            let total_prev = *offs_prev.last().unwrap();
            let offs_cur = gen_offsets(&ctx, &fi.gen_degs, j);
            let total_cur = *offs_cur.last().unwrap();
            let mut big = RrefBasis::new(total_prev + total_cur);
            for (g, &dg) in fi.gen_degs.iter().enumerate() {
                if dg > j {
                    continue;
                }
                for u in 0..ctx.dim(j - dg) {
                    // Image of (std monomial u) * gen_g inside F_{i-1} at degree j.
                    let m = ctx.std_exponents(j - dg, u).clone();
                    let gv = &fi.gen_vecs[g];
                    let img = multiply_vec_by_monomial(
                        &ctx,
                        &prev.gen_degs,
                        gv.0,
                        &gv.1,
                        &m,
                        &offs_prev,
                    );
                    let mut row = img;
                    row.push((total_prev + offs_cur[g] + u, Rational::one()));
                    big.insert(row);
                }
            }
            let mut ker = RrefBasis::new(total_cur);
            for (p, row) in &big.rows {
                if *p >= total_prev {
                    let shifted: SparseVec = row
                        .iter()
                        .map(|(t, c)| (t - total_prev, c.clone()))
                        .collect();
                    let pivot = shifted[0].0;
                    ker.rows.push((pivot, shifted));
                }
            }
            ker.rows.sort_by_key(|(p, _)| *p);
            next_kernels.push(ker);
        }
        kernels = next_kernels;
        prev = fi;
    }
    Ok(table)
}

/// Free modules are held by their generator degrees; coordinates at internal
/// degree j concatenate the standard-monomial coordinates of R_{j - deg g}
/// per generator.
struct FreeModule {
    gen_degs: Vec<u32>,
    /// Generator vectors inside the previous free module, with their degrees.
    gen_vecs: Vec<(u32, SparseVec)>,
}

/// Per-generator coordinate offsets of a free module at internal degree j;
/// the final entry is the total dimension.
fn gen_offsets(ctx: &QuotientCtx, gen_degs: &[u32], j: u32) -> Vec<usize> {
    let mut offs = Vec::with_capacity(gen_degs.len() + 1);
    let mut acc = 0usize;
    for &dg in gen_degs {
        offs.push(acc);
        if dg <= j {
            acc += ctx.dim(j - dg);
        }
    }
    offs.push(acc);
    offs
}

/// Multiplies an element of a free module (coordinates at internal degree
/// `dv`) by a monomial `m`, producing coordinates at degree dv + deg m.
/// `offs` are the generator offsets of the free module at the target degree.
fn multiply_vec_by_monomial(
    ctx: &QuotientCtx,
    gen_degs: &[u32],
    dv: u32,
    vec: &SparseVec,
    m: &[u32],
    offs: &[usize],
) -> SparseVec {
    let src_offs = gen_offsets(ctx, gen_degs, dv);
    let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
    for (idx, c) in vec {
        // Locate the generator block: the last offset not exceeding idx that
        // belongs to a generator alive at this degree.
        let mut g = 0usize;
        for k in 0..gen_degs.len() {
            if src_offs[k] <= *idx && *idx < src_offs[k + 1] {
                g = k;
                break;
            }
        }
        let local = idx - src_offs[g];
        let dg = gen_degs[g];
        for (std_k, rc) in ctx.mult_std_by_monomial(dv - dg, local, m) {
            let entry = out.entry(offs[g] + std_k).or_insert_with(Rational::zero);
            let delta = c * rc;
            *entry += &delta;
        }
    }
    out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}
