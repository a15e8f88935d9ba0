//! Witness steps for every filtration member and degreewise verification of
//! the colon condition J : I in F with I = J + (x).

use super::{enumerate_filtration, FiltrationBounds, FiltrationCtx, FiltrationError, FiltrationId};
use crate::pencil::KWForm;
use crate::ringmodel::{
    colon_piece_against, ideal_piece, membership, two_minors, GeneratorSet, GradedPiece, Poly,
    PolyRing,
};
use std::collections::HashMap;

/// The decomposition backing one colon condition: the member, the member
/// minus one variable, the variable, and the claimed colon ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessStep {
    pub target: FiltrationId,
    pub smaller: FiltrationId,
    pub x_var: usize,
    pub colon: FiltrationId,
}

/// The member generated by every variable.
fn maximal_id(ctx: &FiltrationCtx) -> FiltrationId {
    let d = ctx.num_scroll();
    let t = ctx.num_groups();
    if d == 0 && t == 0 {
        return last_h_id(ctx);
    }
    let a: Vec<usize> = ctx.scroll.iter().map(|(n, _)| n + 1).collect();
    let b = vec![0usize; d];
    gjk_or_simpler(ctx, a, b, t, 0, None)
}

/// The last H ideal (all nilpotent variables), or zero if there are none.
fn last_h_id(ctx: &FiltrationCtx) -> FiltrationId {
    match ctx.nil.len() {
        0 => FiltrationId::Zero,
        c => FiltrationId::H {
            block: c,
            pos: ctx.nil[c - 1].0 - 1,
        },
    }
}

fn prev_h_id(ctx: &FiltrationCtx, block: usize) -> FiltrationId {
    if block <= 1 {
        FiltrationId::Zero
    } else {
        FiltrationId::H {
            block: block - 1,
            pos: ctx.nil[block - 2].0 - 1,
        }
    }
}

/// Canonicalizes a Jordan-family id: with no full group and no partial prefix
/// it is the scroll ideal over all blocks (or the last H ideal when there are
/// no scroll blocks at all).
fn gjk_or_simpler(
    ctx: &FiltrationCtx,
    a: Vec<usize>,
    b: Vec<usize>,
    full_to: usize,
    excluded: usize,
    partial: Option<(usize, usize, usize)>,
) -> FiltrationId {
    let fulls_empty = full_to == 0 || (full_to == 1 && excluded == 1);
    if partial.is_none() && fulls_empty {
        if ctx.num_scroll() == 0 {
            return last_h_id(ctx);
        }
        return FiltrationId::I {
            s: a.len(),
            a,
            b,
        };
    }
    let (full_to, excluded) = if fulls_empty { (0, 0) } else { (full_to, excluded) };
    FiltrationId::Gjk {
        a,
        b,
        full_to,
        excluded,
        partial,
    }
}

/// Position directly before (j, r) in a group's variable chain.
fn prev_prefix(ctx: &FiltrationCtx, group: usize, j: usize, r: usize) -> Option<(usize, usize, usize)> {
    if r >= 2 {
        Some((group, j, r - 1))
    } else if j >= 2 {
        Some((group, j - 1, ctx.jordan[group - 1][j - 2].0))
    } else {
        None
    }
}

/// Witness colon for adding the Jordan variable z^{g}_{j,r} on top of
/// `smaller`: the maximal ideal when the position is not the first of its
/// block. For a block-opening step the colon holds every scroll variable
/// (y_{j,s} z lies in (y_{j,1}) by the shift identities and every member
/// keeps y_{j,1}), all other eigenvalue groups, and the group prefix below.
fn jordan_step_colon(ctx: &FiltrationCtx, group: usize, j: usize, r: usize) -> FiltrationId {
    if r >= 2 {
        return maximal_id(ctx);
    }
    let full_a: Vec<usize> = ctx.scroll.iter().map(|(n, _)| n + 1).collect();
    let zero_b = vec![0usize; ctx.num_scroll()];
    gjk_or_simpler(
        ctx,
        full_a,
        zero_b,
        ctx.num_groups(),
        group,
        prev_prefix(ctx, group, j, r),
    )
}

/// The chain witness of a nonzero member: which variable was added last,
/// what remains without it, and the claimed colon ideal.
pub fn witness(ctx: &FiltrationCtx, id: &FiltrationId) -> Result<WitnessStep, FiltrationError> {
    let step = |smaller: FiltrationId, x_var: usize, colon: FiltrationId| WitnessStep {
        target: id.clone(),
        smaller,
        x_var,
        colon,
    };
    match id {
        FiltrationId::Zero => Err(FiltrationError::InvalidIndex(
            "the zero ideal has no witness".into(),
        )),
        FiltrationId::H { block, pos } => {
            let chain = ctx.h_chain_order(*block);
            let x_var = chain[*pos - 1];
            if *pos >= 2 {
                return Ok(step(
                    FiltrationId::H {
                        block: *block,
                        pos: pos - 1,
                    },
                    x_var,
                    maximal_id(ctx),
                ));
            }
            // First chain variable of the block: the colon collects all
            // Jordan variables and the scroll variables that the chain head
            // annihilates on both ends.
            let (m, _, s) = ctx.nil[*block - 1];
            let d = ctx.num_scroll();
            let mut a = Vec::with_capacity(d);
            let mut b = Vec::with_capacity(d);
            for (nj, _) in &ctx.scroll {
                a.push(nj + 1 - s);
                b.push((nj + 1 + s).saturating_sub(m).min(s));
            }
            let colon = gjk_or_simpler(ctx, a, b, ctx.num_groups(), 0, None);
            Ok(step(prev_h_id(ctx, *block), x_var, colon))
        }
        FiltrationId::I { s, a, b } => {
            let d = ctx.num_scroll();
            let t = ctx.num_groups();
            // Case: some tail entry at least 2 comes off first.
            if let Some(i) = (0..*s).find(|&i| b[i] >= 2) {
                let (ni, vars) = &ctx.scroll[i];
                let x_var = vars[ni + 1 - b[i]]; // y_{i, n_i - b_i + 2}
                let mut b2 = b.clone();
                b2[i] -= 1;
                return Ok(step(
                    FiltrationId::I {
                        s: *s,
                        a: a.clone(),
                        b: b2,
                    },
                    x_var,
                    maximal_id(ctx),
                ));
            }
            // Case: all tails at most 1, some front prefix at least 2.
            let cand = (0..*s)
                .filter(|&i| a[i] >= 2)
                .min_by_key(|&i| (b[i] == 0, i));
            if let Some(i) = cand {
                let (_, vars) = &ctx.scroll[i];
                let x_var = vars[a[i] - 1]; // y_{i, a_i}
                let mut a2 = a.clone();
                a2[i] -= 1;
                let smaller = FiltrationId::I {
                    s: *s,
                    a: a2,
                    b: b.clone(),
                };
                let colon = if b[i] == 1 {
                    maximal_id(ctx)
                } else {
                    let ni = ctx.scroll[i].0;
                    let ai = a[i];
                    let mut ap = Vec::with_capacity(d);
                    for jdx in 0..d {
                        let nj = ctx.scroll[jdx].0;
                        let aj_eff = if jdx < *s { a[jdx] } else { 1 };
                        let bj_eff = if jdx < *s { b[jdx] } else { 0 };
                        let v = if jdx == i {
                            ni
                        } else if bj_eff >= 1 || nj as i64 - aj_eff as i64 <= ni as i64 - ai as i64
                        {
                            nj + 1
                        } else {
                            nj
                        };
                        ap.push(v);
                    }
                    gjk_or_simpler(ctx, ap, vec![0; d], t, 0, None)
                };
                return Ok(step(smaller, x_var, colon));
            }
            // Case: all fronts are 1 and some tail is 1 (largest index).
            if let Some(i) = (0..*s).rev().find(|&i| b[i] == 1) {
                let (ni, vars) = &ctx.scroll[i];
                let x_var = vars[*ni]; // y_{i, n_i + 1}
                let mut b2 = b.clone();
                b2[i] = 0;
                let smaller = FiltrationId::I {
                    s: *s,
                    a: a.clone(),
                    b: b2,
                };
                let mut ap = Vec::with_capacity(d);
                for jdx in 0..d {
                    let nj = ctx.scroll[jdx].0;
                    let v = match jdx.cmp(&i) {
                        std::cmp::Ordering::Less => nj + 1,
                        std::cmp::Ordering::Equal => 1,
                        std::cmp::Ordering::Greater => nj - ni + 1,
                    };
                    ap.push(v);
                }
                let colon = gjk_or_simpler(ctx, ap, vec![0; d], t, 0, None);
                return Ok(step(smaller, x_var, colon));
            }
            // Case: a = (1, ..., 1), b = 0: drop the last block's first
            // variable; the colon keeps the earlier blocks entirely.
            let x_var = ctx.scroll[*s - 1].1[0]; // y_{s,1}
            let (smaller, colon) = if *s == 1 {
                (last_h_id(ctx), last_h_id(ctx))
            } else {
                let smaller = FiltrationId::I {
                    s: s - 1,
                    a: vec![1; s - 1],
                    b: vec![0; s - 1],
                };
                let full: Vec<usize> = (0..s - 1).map(|j| ctx.scroll[j].0 + 1).collect();
                (
                    smaller,
                    FiltrationId::I {
                        s: s - 1,
                        a: full,
                        b: vec![0; s - 1],
                    },
                )
            };
            Ok(step(smaller, x_var, colon))
        }
        FiltrationId::Gjk {
            a,
            b,
            full_to,
            excluded,
            partial,
        } => {
            match partial {
                Some((g, j, r)) => {
                    let x_var = ctx.jordan[*g - 1][*j - 1].1[*r - 1];
                    let smaller = gjk_or_simpler(
                        ctx,
                        a.clone(),
                        b.clone(),
                        *full_to,
                        *excluded,
                        prev_prefix(ctx, *g, *j, *r),
                    );
                    let colon = jordan_step_colon(ctx, *g, *j, *r);
                    Ok(step(smaller, x_var, colon))
                }
                None => {
                    // Remove the last variable of the largest full group.
                    let u = if *excluded == *full_to {
                        full_to - 1
                    } else {
                        *full_to
                    };
                    if u == 0 {
                        return Err(FiltrationError::InvalidIndex(
                            "empty Jordan family member should have been simplified".into(),
                        ));
                    }
                    let group = &ctx.jordan[u - 1];
                    let jb = group.len();
                    let p = group[jb - 1].0;
                    let x_var = group[jb - 1].1[p - 1];
                    let (l2, e2) = if *excluded < u { (u - 1, *excluded) } else { (u - 1, 0) };
                    let (l2, e2) = if e2 > l2 { (l2, 0) } else { (l2, e2) };
                    let smaller = gjk_or_simpler(
                        ctx,
                        a.clone(),
                        b.clone(),
                        l2,
                        e2,
                        prev_prefix(ctx, u, jb, p),
                    );
                    let colon = jordan_step_colon(ctx, u, jb, p);
                    Ok(step(smaller, x_var, colon))
                }
            }
        }
    }
}

/// One verified member in a filtration report.
#[derive(Debug, Clone)]
pub struct FiltrationStepReport {
    pub ideal: String,
    pub smaller: String,
    pub x: String,
    pub colon: String,
    /// Sets line up and both referenced ideals are members.
    pub structural_ok: bool,
    /// The colon identity holds in every checked degree.
    pub colon_ok: bool,
    pub first_failure_degree: Option<u32>,
}

#[derive(Debug, Clone)]
pub struct FiltrationReport {
    pub members: usize,
    pub checked_to_degree: u32,
    pub steps: Vec<FiltrationStepReport>,
    pub verdict: bool,
}

/// Enumerates the family and checks, for every nonzero member I with witness
/// (J, x, C): variables(J) + x = variables(I), J and C are members, and
/// (J : x)_d = C_d over the determinantal ring for every degree d <= dmax.
pub fn verify_koszul_filtration(
    form: &KWForm,
    dmax: u32,
    bounds: &FiltrationBounds,
) -> Result<FiltrationReport, FiltrationError> {
    let filt = enumerate_filtration(form, bounds)?;
    let ctx = &filt.ctx;
    let x_matrix = form.to_matrix();
    let ring = PolyRing::new(x_matrix.variables.clone());
    let base = two_minors(&x_matrix);
    let names = form.variable_names();
    let n = ring.num_vars();

    // Degree pieces of (variable set + minors), cached by mask.
    let mut cache: HashMap<(u64, u32), GradedPiece> = HashMap::new();
    let piece = |mask: u64, d: u32, cache: &mut HashMap<(u64, u32), GradedPiece>| {
        if let Some(p) = cache.get(&(mask, d)) {
            return p.clone();
        }
        let mut gens = base.clone();
        for v in 0..n {
            if mask & (1 << v) != 0 {
                gens.gens.push(Poly::variable(n, v));
            }
        }
        let p = ideal_piece(&ring, &gens, d);
        cache.insert((mask, d), p.clone());
        p
    };

    let mut steps = Vec::new();
    let mut verdict = true;
    for (mask, id) in &filt.members {
        if *mask == 0 {
            continue;
        }
        let w = witness(ctx, id)?;
        let smaller_mask = ctx.expand(&w.smaller)?;
        let colon_mask = ctx.expand(&w.colon)?;
        let structural_ok = smaller_mask | (1 << w.x_var) == *mask
            && smaller_mask & (1 << w.x_var) == 0
            && filt.contains_mask(smaller_mask)
            && filt.contains_mask(colon_mask);
        let xp = Poly::variable(n, w.x_var);
        let mut colon_ok = true;
        let mut first_failure = None;
        for d in 1..=dmax {
            let target = piece(smaller_mask, d + 1, &mut cache);
            let lhs = colon_piece_against(&ring, &target, &xp, d);
            let rhs = piece(colon_mask, d, &mut cache);
            if lhs.basis != rhs.basis {
                colon_ok = false;
                first_failure = Some(d);
                break;
            }
        }
        verdict = verdict && structural_ok && colon_ok;
        steps.push(FiltrationStepReport {
            ideal: id.to_string(),
            smaller: w.smaller.to_string(),
            x: names[w.x_var].clone(),
            colon: w.colon.to_string(),
            structural_ok,
            colon_ok,
            first_failure_degree: first_failure,
        });
    }
    Ok(FiltrationReport {
        members: filt.members.len(),
        checked_to_degree: dmax,
        steps,
        verdict,
    })
}

#[derive(Debug, Clone)]
pub struct StructuralCheck {
    pub description: String,
    pub ok: bool,
}

#[derive(Debug, Clone)]
pub struct StructuralReport {
    pub checks: Vec<StructuralCheck>,
    pub verdict: bool,
}

/// Product and colon-containment identities of the determinantal ring of a
/// block form: nilpotent variables square to zero and annihilate Jordan
/// variables, nilpotent-scroll products vanish in the stated index ranges,
/// Jordan variables of distinct eigenvalues annihilate each other, and the
/// three scroll colon containments hold generator by generator.
pub fn verify_structural_identities(form: &KWForm) -> StructuralReport {
    let ctx = FiltrationCtx::new(form);
    let x_matrix = form.to_matrix();
    let ring = PolyRing::new(x_matrix.variables.clone());
    let base = two_minors(&x_matrix);
    let names = form.variable_names();
    let n = ring.num_vars();
    let var = |v: usize| Poly::variable(n, v);
    let mut checks = Vec::new();
    let push = |desc: String, ok: bool, checks: &mut Vec<StructuralCheck>| {
        checks.push(StructuralCheck {
            description: desc,
            ok,
        });
    };

    let nil_vars: Vec<usize> = ctx.nil.iter().flat_map(|(_, vs, _)| vs.clone()).collect();
    let jordan_vars: Vec<Vec<usize>> = ctx
        .jordan
        .iter()
        .map(|g| g.iter().flat_map(|(_, vs)| vs.clone()).collect())
        .collect();

    // Nilpotent times Jordan vanishes; the nilpotent variables square to zero.
    for &xv in &nil_vars {
        for zs in &jordan_vars {
            for &zv in zs {
                let ok = membership(&ring, &var(xv).mul(&var(zv)), &base);
                push(format!("{}*{} = 0", names[xv], names[zv]), ok, &mut checks);
            }
        }
    }
    for (ai, &xa) in nil_vars.iter().enumerate() {
        for &xb in nil_vars.iter().skip(ai) {
            let ok = membership(&ring, &var(xa).mul(&var(xb)), &base);
            push(format!("{}*{} = 0", names[xa], names[xb]), ok, &mut checks);
        }
    }

    // Nilpotent times scroll vanishes when r + s <= n_j + 1 or r + s >= m_i + 1.
    for (m, xvars, _) in &ctx.nil {
        for (r, &xv) in xvars.iter().enumerate() {
            let r = r + 1;
            for (nj, yvars) in &ctx.scroll {
                for (s, &yv) in yvars.iter().enumerate() {
                    let s = s + 1;
                    if r + s <= nj + 1 || r + s >= m + 1 {
                        let ok = membership(&ring, &var(xv).mul(&var(yv)), &base);
                        push(format!("{}*{} = 0", names[xv], names[yv]), ok, &mut checks);
                    }
                }
            }
        }
    }

    // (all Jordan variables) lies in (y_{i,r}) : y_{i,s} for r < s.
    for (ni, yvars) in &ctx.scroll {
        let _ = ni;
        for r in 0..yvars.len() {
            for s in r + 1..yvars.len() {
                for zs in &jordan_vars {
                    for &zv in zs {
                        let j = GeneratorSet::new(vec![var(yvars[r])]).extend(&base);
                        let ok = membership(&ring, &var(zv).mul(&var(yvars[s])), &j);
                        push(
                            format!(
                                "{} in ({}) : {}",
                                names[zv], names[yvars[r]], names[yvars[s]]
                            ),
                            ok,
                            &mut checks,
                        );
                    }
                }
            }
        }
    }

    // Front halves divide one step down, back halves one step up.
    let scroll_fronts: Vec<usize> = ctx
        .scroll
        .iter()
        .flat_map(|(nj, vs)| vs.iter().take(*nj).copied().collect::<Vec<_>>())
        .collect();
    let scroll_backs: Vec<usize> = ctx
        .scroll
        .iter()
        .flat_map(|(_, vs)| vs.iter().skip(1).copied().collect::<Vec<_>>())
        .collect();
    for (_, yvars) in &ctx.scroll {
        for r in 1..yvars.len() {
            let j = GeneratorSet::new(vec![var(yvars[r - 1])]).extend(&base);
            for &fv in &scroll_fronts {
                let ok = membership(&ring, &var(fv).mul(&var(yvars[r])), &j);
                push(
                    format!(
                        "{} in ({}) : {}",
                        names[fv], names[yvars[r - 1]], names[yvars[r]]
                    ),
                    ok,
                    &mut checks,
                );
            }
        }
        for r in 0..yvars.len() - 1 {
            let j = GeneratorSet::new(vec![var(yvars[r + 1])]).extend(&base);
            for &bv in &scroll_backs {
                let ok = membership(&ring, &var(bv).mul(&var(yvars[r])), &j);
                push(
                    format!(
                        "{} in ({}) : {}",
                        names[bv], names[yvars[r + 1]], names[yvars[r]]
                    ),
                    ok,
                    &mut checks,
                );
            }
        }
    }

    // Distinct eigenvalue groups annihilate each other.
    for gi in 0..jordan_vars.len() {
        for gj in gi + 1..jordan_vars.len() {
            for &za in &jordan_vars[gi] {
                for &zb in &jordan_vars[gj] {
                    let ok = membership(&ring, &var(za).mul(&var(zb)), &base);
                    push(format!("{}*{} = 0", names[za], names[zb]), ok, &mut checks);
                }
            }
        }
    }

    let verdict = checks.iter().all(|c| c.ok);
    StructuralReport { checks, verdict }
}
