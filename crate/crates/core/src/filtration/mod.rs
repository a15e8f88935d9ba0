//! Koszul filtrations for determinantal rings of block normal forms obeying
//! the length condition: the family of variable-generated ideals, the chain
//! witness for each member, and degreewise certification of every colon
//! condition.

mod verify;

pub use verify::{
    verify_koszul_filtration, verify_structural_identities, witness, FiltrationReport,
    FiltrationStepReport, StructuralCheck, StructuralReport, WitnessStep,
};

use crate::pencil::{KWBlock, KWForm};
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FiltrationError {
    #[error("length condition violated: longest nilpotent length {m} exceeds twice the shortest scroll length {n}")]
    LengthConditionViolated { m: usize, n: usize },
    #[error("enumeration bounds exceeded: {0}")]
    BoundsExceeded(String),
    #[error("invalid index: {0}")]
    InvalidIndex(String),
}

/// Enumeration caps; the ideal family grows as a product over block ranges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiltrationBounds {
    pub max_scroll_blocks: usize,
    pub max_scroll_length: usize,
    pub max_variables: usize,
}

impl Default for FiltrationBounds {
    fn default() -> Self {
        FiltrationBounds {
            max_scroll_blocks: 3,
            max_scroll_length: 4,
            max_variables: 14,
        }
    }
}

/// One member of the filtration family, named by its construction indices.
///
/// `H` ideals walk the nilpotent variables, `I` ideals add scroll variables
/// by front-prefix `a` and back-tail `b` vectors, and `Gjk` ideals add Jordan
/// variables: all groups up to `full_to` except `excluded` taken entirely,
/// plus a prefix of one more group. The classical two-parameter Jordan
/// families are the shapes with `excluded == partial group` or `full_to == 0`;
/// the remaining shapes keep the family closed under its own witness chains
/// once three or more eigenvalue groups are present.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FiltrationId {
    Zero,
    /// 1-based nilpotent block index (blocks of length >= 2 only) and chain
    /// position 1..=m_i - 1.
    H { block: usize, pos: usize },
    /// Scroll ideal over blocks 1..=s with front prefixes `a` and tails `b`.
    I {
        s: usize,
        a: Vec<usize>,
        b: Vec<usize>,
    },
    /// Scroll part over all blocks plus Jordan variables.
    Gjk {
        a: Vec<usize>,
        b: Vec<usize>,
        /// Groups 1..=full_to are taken entirely...
        full_to: usize,
        /// ...except this one (0 = no exclusion).
        excluded: usize,
        /// Optional partial group: (group, block, upto), group not among the
        /// full ones.
        partial: Option<(usize, usize, usize)>,
    },
}

impl fmt::Display for FiltrationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn vecs(v: &[usize]) -> String {
            let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            format!("({})", s.join(","))
        }
        match self {
            FiltrationId::Zero => write!(f, "0"),
            FiltrationId::H { block, pos } => write!(f, "H({},{})", block, pos),
            FiltrationId::I { s, a, b } => {
                write!(f, "I({};a={},b={})", s, vecs(a), vecs(b))
            }
            FiltrationId::Gjk {
                a,
                b,
                full_to,
                excluded,
                partial,
            } => {
                if *full_to == 0 && *excluded == 0 {
                    match partial {
                        Some((g, j, r)) => {
                            write!(f, "J({},{},{};a={},b={})", g, j, r, vecs(a), vecs(b))
                        }
                        None => write!(f, "I({};a={},b={})", a.len(), vecs(a), vecs(b)),
                    }
                } else {
                    match partial {
                        Some((g, j, r)) => write!(
                            f,
                            "K(l={},excl={},{},{},{};a={},b={})",
                            full_to, excluded, g, j, r, vecs(a), vecs(b)
                        ),
                        None => write!(
                            f,
                            "K(l={},excl={};a={},b={})",
                            full_to, excluded, vecs(a), vecs(b)
                        ),
                    }
                }
            }
        }
    }
}

/// Block data of a form, resolved to variable indices of its canonical
/// matrix.
#[derive(Debug, Clone)]
pub struct FiltrationCtx {
    pub num_vars: usize,
    /// Nilpotent blocks of length >= 2: (length, variable indices, s_i).
    pub nil: Vec<(usize, Vec<usize>, usize)>,
    /// Scroll blocks: (length, variable indices y_{j,1..n_j+1}).
    pub scroll: Vec<(usize, Vec<usize>)>,
    /// Jordan groups ascending by eigenvalue: blocks (length, variables).
    pub jordan: Vec<Vec<(usize, Vec<usize>)>>,
}

impl FiltrationCtx {
    pub fn new(form: &KWForm) -> Self {
        let names = form.variable_names();
        let num_vars = names.len();
        let mut nil = Vec::new();
        let mut scroll = Vec::new();
        let mut jordan: Vec<Vec<(usize, Vec<usize>)>> = Vec::new();
        let mut groups_seen: Vec<crate::rational::Rational> = Vec::new();
        let mut off = 0usize;
        for blk in &form.blocks {
            let nv = blk.var_count();
            let vars: Vec<usize> = (off..off + nv).collect();
            match blk {
                KWBlock::Nilpotent { length } => {
                    if *length >= 2 {
                        nil.push((*length, vars, 0));
                    }
                }
                KWBlock::Scroll { length } => scroll.push((*length, vars)),
                KWBlock::Jordan { length, eigenvalue } => {
                    let gi = match groups_seen.iter().position(|ev| ev == eigenvalue) {
                        Some(p) => p,
                        None => {
                            groups_seen.push(eigenvalue.clone());
                            jordan.push(Vec::new());
                            groups_seen.len() - 1
                        }
                    };
                    jordan[gi].push((*length, vars));
                }
            }
            off += nv;
        }
        // s_i = max(m_i - n_1, 1); when no scroll block exists the chain order
        // inside a nilpotent block is immaterial and s_i = 1 works.
        let n1 = scroll.first().map(|(n, _)| *n);
        for (m, _, s) in nil.iter_mut() {
            *s = match n1 {
                Some(n1) => (*m).saturating_sub(n1).max(1),
                None => 1,
            };
        }
        FiltrationCtx {
            num_vars,
            nil,
            scroll,
            jordan,
        }
    }

    pub fn num_scroll(&self) -> usize {
        self.scroll.len()
    }

    pub fn num_groups(&self) -> usize {
        self.jordan.len()
    }

    /// Variables of nilpotent block `i` (1-based) in chain order: the
    /// prefix x_{i,s_i}, x_{i,s_i-1}, ..., x_{i,1}, then x_{i,s_i+1}, ...
    pub fn h_chain_order(&self, i: usize) -> Vec<usize> {
        let (m, vars, s) = &self.nil[i - 1];
        let mut order = Vec::with_capacity(m - 1);
        for r in (1..=*s).rev() {
            order.push(vars[r - 1]);
        }
        for r in *s + 1..=*m - 1 {
            order.push(vars[r - 1]);
        }
        order
    }

    fn all_nilpotent_mask(&self) -> u64 {
        let mut mask = 0u64;
        for (_, vars, _) in &self.nil {
            for &v in vars {
                mask |= 1 << v;
            }
        }
        mask
    }

    pub fn all_mask(&self) -> u64 {
        if self.num_vars == 64 {
            u64::MAX
        } else {
            (1u64 << self.num_vars) - 1
        }
    }

    /// Expands an id to its variable set as a bitmask.
    pub fn expand(&self, id: &FiltrationId) -> Result<u64, FiltrationError> {
        let bad = |msg: String| Err(FiltrationError::InvalidIndex(msg));
        match id {
            FiltrationId::Zero => Ok(0),
            FiltrationId::H { block, pos } => {
                if *block == 0 || *block > self.nil.len() {
                    return bad(format!("H block {} out of range", block));
                }
                let m = self.nil[*block - 1].0;
                if *pos == 0 || *pos > m - 1 {
                    return bad(format!("H position {} out of range", pos));
                }
                let mut mask = 0u64;
                for i in 1..*block {
                    for &v in &self.nil[i - 1].1 {
                        mask |= 1 << v;
                    }
                }
                for &v in self.h_chain_order(*block).iter().take(*pos) {
                    mask |= 1 << v;
                }
                Ok(mask)
            }
            FiltrationId::I { s, a, b } => {
                if *s > self.scroll.len() || a.len() != *s || b.len() != *s {
                    return bad(format!("I index s={} with |a|={} |b|={}", s, a.len(), b.len()));
                }
                self.check_ab(a, b)?;
                let mut mask = self.all_nilpotent_mask();
                for j in 0..*s {
                    mask |= self.scroll_ab_mask(j, a[j], b[j]);
                }
                Ok(mask)
            }
            FiltrationId::Gjk {
                a,
                b,
                full_to,
                excluded,
                partial,
            } => {
                let d = self.scroll.len();
                let t = self.jordan.len();
                if a.len() != d || b.len() != d {
                    return bad("Jordan-family ideal needs full-length scroll vectors".into());
                }
                self.check_ab(a, b)?;
                if *full_to > t || (*excluded != 0 && *excluded > *full_to) {
                    return bad(format!("group range l={} excl={}", full_to, excluded));
                }
                let mut mask = self.all_nilpotent_mask();
                for j in 0..d {
                    mask |= self.scroll_ab_mask(j, a[j], b[j]);
                }
                for g in 1..=*full_to {
                    if g == *excluded {
                        continue;
                    }
                    for (_, vars) in &self.jordan[g - 1] {
                        for &v in vars {
                            mask |= 1 << v;
                        }
                    }
                }
                if let Some((g, jb, r)) = partial {
                    if *g == 0 || *g > t || (*g <= *full_to && *g != *excluded) {
                        return bad(format!("partial group {} conflicts with full range", g));
                    }
                    let group = &self.jordan[*g - 1];
                    if *jb == 0 || *jb > group.len() || *r == 0 || *r > group[*jb - 1].0 {
                        return bad(format!("partial position ({},{},{})", g, jb, r));
                    }
                    for (len, vars) in group.iter().take(*jb - 1) {
                        debug_assert_eq!(*len, vars.len());
                        for &v in vars {
                            mask |= 1 << v;
                        }
                    }
                    for &v in group[*jb - 1].1.iter().take(*r) {
                        mask |= 1 << v;
                    }
                }
                Ok(mask)
            }
        }
    }

    fn check_ab(&self, a: &[usize], b: &[usize]) -> Result<(), FiltrationError> {
        let mut gap_closed = false;
        for (j, (&aj, &bj)) in a.iter().zip(b).enumerate() {
            let nj = self.scroll[j].0;
            if aj == 0 || aj + bj > nj + 1 {
                return Err(FiltrationError::InvalidIndex(format!(
                    "block {}: a={} b={} with n={}",
                    j + 1,
                    aj,
                    bj,
                    nj
                )));
            }
            if bj == 0 {
                gap_closed = true;
            } else if gap_closed {
                return Err(FiltrationError::InvalidIndex(
                    "tail vector has a gap".into(),
                ));
            }
        }
        Ok(())
    }

    fn scroll_ab_mask(&self, j: usize, a: usize, b: usize) -> u64 {
        let (nj, vars) = &self.scroll[j];
        let mut mask = 0u64;
        for &v in vars.iter().take(a) {
            mask |= 1 << v;
        }
        for &v in vars.iter().skip(nj + 1 - b) {
            mask |= 1 << v;
        }
        mask
    }

    /// Variable names of an id, through the form's canonical naming.
    pub fn variable_names(&self, form: &KWForm, id: &FiltrationId) -> Vec<String> {
        let names = form.variable_names();
        let mask = self.expand(id).expect("valid id");
        (0..self.num_vars)
            .filter(|v| mask & (1 << v) != 0)
            .map(|v| names[v].clone())
            .collect()
    }
}

/// The enumerated family: members deduplicated by variable set, each holding
/// its first (canonical) index.
#[derive(Debug, Clone)]
pub struct Filtration {
    pub ctx: FiltrationCtx,
    /// (mask, canonical id) sorted by (popcount, mask).
    pub members: Vec<(u64, FiltrationId)>,
    pub by_mask: HashMap<u64, usize>,
}

impl Filtration {
    pub fn contains_mask(&self, mask: u64) -> bool {
        self.by_mask.contains_key(&mask)
    }

    pub fn id_for_mask(&self, mask: u64) -> Option<&FiltrationId> {
        self.by_mask.get(&mask).map(|&i| &self.members[i].1)
    }
}

/// Enumerates the filtration family of a form satisfying the length
/// condition, deduplicated by expanded variable set.
pub fn enumerate_filtration(
    form: &KWForm,
    bounds: &FiltrationBounds,
) -> Result<Filtration, FiltrationError> {
    let ctx = FiltrationCtx::new(form);
    let m = ctx.nil.iter().map(|(m, _, _)| *m).max().unwrap_or(0);
    let n1 = ctx.scroll.first().map(|(n, _)| *n).unwrap_or(0);
    if m >= 2 && n1 >= 1 && m > 2 * n1 {
        return Err(FiltrationError::LengthConditionViolated { m, n: n1 });
    }
    if ctx.num_vars > bounds.max_variables || ctx.num_vars > 64 {
        return Err(FiltrationError::BoundsExceeded(format!(
            "{} variables (cap {})",
            ctx.num_vars, bounds.max_variables
        )));
    }
    if ctx.scroll.len() > bounds.max_scroll_blocks {
        return Err(FiltrationError::BoundsExceeded(format!(
            "{} scroll blocks (cap {})",
            ctx.scroll.len(),
            bounds.max_scroll_blocks
        )));
    }
    if let Some(max_n) = ctx.scroll.iter().map(|(n, _)| *n).max() {
        if max_n > bounds.max_scroll_length {
            return Err(FiltrationError::BoundsExceeded(format!(
                "scroll length {} (cap {})",
                max_n, bounds.max_scroll_length
            )));
        }
    }

    let mut ids: Vec<FiltrationId> = vec![FiltrationId::Zero];
    for i in 1..=ctx.nil.len() {
        for pos in 1..=ctx.nil[i - 1].0 - 1 {
            ids.push(FiltrationId::H { block: i, pos });
        }
    }
    let d = ctx.scroll.len();
    for s in 1..=d {
        for (a, b) in ab_lattice(&ctx, s) {
            ids.push(FiltrationId::I { s, a, b });
        }
    }
    let t = ctx.jordan.len();
    if t > 0 {
        let lattice = ab_lattice(&ctx, d);
        for (a, b) in &lattice {
            for full_to in 0..=t {
                for excluded in 0..=full_to {
                    // Partial-group candidates: the excluded one, or any group
                    // beyond the full range.
                    let mut partials: Vec<Option<(usize, usize, usize)>> = vec![None];
                    let mut cands: Vec<usize> = Vec::new();
                    if excluded >= 1 {
                        cands.push(excluded);
                    }
                    for g in full_to + 1..=t {
                        cands.push(g);
                    }
                    for g in cands {
                        for (jb, (len, _)) in ctx.jordan[g - 1].iter().enumerate() {
                            for r in 1..=*len {
                                partials.push(Some((g, jb + 1, r)));
                            }
                        }
                    }
                    for partial in partials {
                        if full_to == 0 && excluded == 0 && partial.is_none() {
                            continue; // equals the corresponding I ideal
                        }
                        ids.push(FiltrationId::Gjk {
                            a: a.clone(),
                            b: b.clone(),
                            full_to,
                            excluded,
                            partial,
                        });
                    }
                }
            }
        }
    }

    let mut by_mask: HashMap<u64, usize> = HashMap::new();
    let mut members: Vec<(u64, FiltrationId)> = Vec::new();
    for id in ids {
        let mask = ctx.expand(&id)?;
        if let std::collections::hash_map::Entry::Vacant(e) = by_mask.entry(mask) {
            e.insert(members.len());
            members.push((mask, id));
        }
    }
    // Deterministic order: by size then by mask.
    let mut order: Vec<usize> = (0..members.len()).collect();
    order.sort_by_key(|&i| (members[i].0.count_ones(), members[i].0));
    let members: Vec<(u64, FiltrationId)> = order.into_iter().map(|i| members[i].clone()).collect();
    let by_mask = members
        .iter()
        .enumerate()
        .map(|(i, (m, _))| (*m, i))
        .collect();
    Ok(Filtration {
        ctx,
        members,
        by_mask,
    })
}

/// All (a, b) pairs over the first s scroll blocks: 1 <= a_j <= n_j + 1 - b_j
/// with the tail vector b free of gaps.
fn ab_lattice(ctx: &FiltrationCtx, s: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    let mut a = vec![0usize; s];
    let mut b = vec![0usize; s];
    fn rec(
        ctx: &FiltrationCtx,
        s: usize,
        j: usize,
        gap_closed: bool,
        a: &mut Vec<usize>,
        b: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, Vec<usize>)>,
    ) {
        if j == s {
            out.push((a.clone(), b.clone()));
            return;
        }
        let nj = ctx.scroll[j].0;
        let bmax = if gap_closed { 0 } else { nj };
        for bj in 0..=bmax {
            for aj in 1..=(nj + 1 - bj) {
                a[j] = aj;
                b[j] = bj;
                rec(ctx, s, j + 1, bj == 0, a, b, out);
            }
        }
    }
    rec(ctx, s, 0, false, &mut a, &mut b, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn form_ns(m: usize, n: usize) -> KWForm {
        KWForm::new(vec![
            KWBlock::Nilpotent { length: m },
            KWBlock::Scroll { length: n },
        ])
    }

    #[test]
    fn worked_example_family_nilpotent_scroll() {
        // One nilpotent of length m next to one scroll of length n:
        // H_0..H_{m-1} plus the (a, b) family.
        let filt = enumerate_filtration(&form_ns(2, 1), &FiltrationBounds::default()).unwrap();
        // Variables: x1, y1, y2. Members: 0, (x1), (x1,y1), (x1,y1,y2);
        // the front prefix is never empty so y1 is in every scroll member.
        assert_eq!(filt.members.len(), 4);
        assert!(filt.contains_mask(0));
        let all = filt.ctx.all_mask();
        assert!(filt.contains_mask(all));
    }

    #[test]
    fn h_chain_prefix_order() {
        // m = 4, n = 2: s_1 = 2, first chain variable is x2.
        let filt = enumerate_filtration(&form_ns(4, 2), &FiltrationBounds::default()).unwrap();
        let h1 = filt
            .ctx
            .expand(&FiltrationId::H { block: 1, pos: 1 })
            .unwrap();
        assert_eq!(h1, 1 << 1); // x2 has variable index 1
        let h2 = filt
            .ctx
            .expand(&FiltrationId::H { block: 1, pos: 2 })
            .unwrap();
        assert_eq!(h2, (1 << 1) | (1 << 0)); // x1, x2
    }

    #[test]
    fn length_condition_enforced() {
        let err = enumerate_filtration(&form_ns(3, 1), &FiltrationBounds::default()).unwrap_err();
        assert_eq!(
            err,
            FiltrationError::LengthConditionViolated { m: 3, n: 1 }
        );
    }

    #[test]
    fn saturated_i_contains_all_scroll_variables() {
        let form = KWForm::new(vec![
            KWBlock::Scroll { length: 1 },
            KWBlock::Scroll { length: 2 },
        ]);
        let filt = enumerate_filtration(&form, &FiltrationBounds::default()).unwrap();
        let id = FiltrationId::I {
            s: 2,
            a: vec![2, 3],
            b: vec![0, 0],
        };
        assert_eq!(filt.ctx.expand(&id).unwrap(), filt.ctx.all_mask());
    }

    #[test]
    fn mixed_example_variable_sets() {
        // Nilpotent 4, scroll 2, two Jordan blocks of length 2 with distinct
        // eigenvalues: the family contains the mixed ideal with all x, y1,
        // both whole groups, and the first z of group 1 missing from none...
        let form = KWForm::new(vec![
            KWBlock::Nilpotent { length: 4 },
            KWBlock::Scroll { length: 2 },
            KWBlock::Jordan {
                length: 2,
                eigenvalue: Rational::zero(),
            },
            KWBlock::Jordan {
                length: 2,
                eigenvalue: Rational::one(),
            },
        ]);
        let filt = enumerate_filtration(&form, &FiltrationBounds::default()).unwrap();
        // K with group 2 full and z1 of group 1: x1,x2,x3,y1,u1,u2,z1.
        let id = FiltrationId::Gjk {
            a: vec![1],
            b: vec![0],
            full_to: 2,
            excluded: 1,
            partial: Some((1, 1, 1)),
        };
        let names = filt.ctx.variable_names(&form, &id);
        assert_eq!(
            names,
            vec!["x1", "x2", "x3", "y1", "z1_1_1", "z2_1_1", "z2_1_2"]
        );
        // The saturated family member expands to everything.
        let top = FiltrationId::Gjk {
            a: vec![3],
            b: vec![0],
            full_to: 2,
            excluded: 2,
            partial: Some((2, 1, 2)),
        };
        assert_eq!(filt.ctx.expand(&top).unwrap(), filt.ctx.all_mask());
        assert!(filt.contains_mask(filt.ctx.all_mask()));
    }

    #[test]
    fn pure_jordan_two_groups_family() {
        let form = KWForm::new(vec![
            KWBlock::Jordan {
                length: 2,
                eigenvalue: Rational::zero(),
            },
            KWBlock::Jordan {
                length: 2,
                eigenvalue: Rational::one(),
            },
        ]);
        let filt = enumerate_filtration(&form, &FiltrationBounds::default()).unwrap();
        // J-prefixes of each group, K-combinations, zero and the maximal.
        // Masks: group1 = {z1,z2} bits 0,1; group2 = {u1,u2} bits 2,3.
        let masks: Vec<u64> = filt.members.iter().map(|(m, _)| *m).collect();
        for want in [
            0u64,
            0b0001,
            0b0011,
            0b0100,
            0b1100,
            0b0111,
            0b1101,
            0b1111,
        ] {
            assert!(masks.contains(&want), "missing mask {:04b}", want);
        }
    }
}
