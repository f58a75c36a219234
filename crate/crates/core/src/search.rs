use crate::error::{Result, SgError};
use crate::green;
use crate::orders::Embedding;
use crate::relation::Relation;
use crate::semigroup::FiniteSemigroup;
use crate::starpair::{induced_star_pair, StarPair};
use std::collections::HashSet;
use std::time::Instant;

/// Limits for brute-force searches. Exceeding any limit surfaces as an
/// explicit Exhausted error, never a silent truncation.
#[derive(Debug, Clone)]
pub struct SearchBudget {
    pub max_order: usize,
    pub max_tables: Option<u64>,
    pub time_limit: Option<f64>,
}

impl SearchBudget {
    /// Default bound for free enumeration.
    pub fn free() -> SearchBudget {
        SearchBudget {
            max_order: 5,
            max_tables: None,
            time_limit: None,
        }
    }

    /// Default bound for extension searches.
    pub fn extension() -> SearchBudget {
        SearchBudget {
            max_order: 6,
            max_tables: None,
            time_limit: None,
        }
    }

    pub fn with_max_order(mut self, n: usize) -> SearchBudget {
        self.max_order = n;
        self
    }

    pub fn with_max_tables(mut self, t: u64) -> SearchBudget {
        self.max_tables = Some(t);
        self
    }
}

impl Default for SearchBudget {
    fn default() -> SearchBudget {
        SearchBudget::free()
    }
}

struct BudgetState<'a> {
    budget: &'a SearchBudget,
    tables_seen: u64,
    started: Instant,
}

impl<'a> BudgetState<'a> {
    fn new(budget: &'a SearchBudget) -> BudgetState<'a> {
        BudgetState {
            budget,
            tables_seen: 0,
            started: Instant::now(),
        }
    }

    fn charge_table(&mut self) -> Result<()> {
        self.tables_seen += 1;
        if let Some(cap) = self.budget.max_tables {
            if self.tables_seen > cap {
                return Err(SgError::Exhausted(format!(
                    "table cap {cap} reached"
                )));
            }
        }
        if let Some(limit) = self.budget.time_limit {
            if self.started.elapsed().as_secs_f64() > limit {
                return Err(SgError::Exhausted(format!(
                    "time limit {limit}s reached"
                )));
            }
        }
        Ok(())
    }
}

const UNSET: usize = usize::MAX;

/// Do all fully determined associativity triples hold, looking only at
/// triples that involve the just-assigned cell?
fn triples_ok(n: usize, t: &[usize]) -> bool {
    for a in 0..n {
        for b in 0..n {
            let ab = t[a * n + b];
            if ab == UNSET {
                continue;
            }
            for c in 0..n {
                let bc = t[b * n + c];
                if bc == UNSET {
                    continue;
                }
                let left = t[ab * n + c];
                let right = t[a * n + bc];
                if left != UNSET && right != UNSET && left != right {
                    return false;
                }
            }
        }
    }
    true
}

fn fill_cells(
    n: usize,
    table: &mut Vec<usize>,
    cell: usize,
    state: &mut BudgetState,
    emit: &mut dyn FnMut(&[usize]) -> Result<bool>,
) -> Result<bool> {
    if cell == n * n {
        state.charge_table()?;
        return emit(table);
    }
    if table[cell] != UNSET {
        return fill_cells(n, table, cell + 1, state, emit);
    }
    for v in 0..n {
        table[cell] = v;
        if triples_ok(n, table) && fill_cells(n, table, cell + 1, state, emit)? {
            table[cell] = UNSET;
            return Ok(true);
        }
        table[cell] = UNSET;
    }
    Ok(false)
}

/// Least relabelled table over all permutations of the element set.
pub fn canonical_form(s: &FiniteSemigroup) -> Vec<usize> {
    let n = s.order();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<usize>> = None;
    permute(&mut perm, 0, &mut |p| {
        // p[i] is the new label of element i
        let mut inv = vec![0; n];
        for (i, &pi) in p.iter().enumerate() {
            inv[pi] = i;
        }
        let relabel: Vec<usize> = (0..n * n)
            .map(|cell| p[s.mul(inv[cell / n], inv[cell % n])])
            .collect();
        match &best {
            Some(b) if *b <= relabel => {}
            _ => best = Some(relabel),
        }
    });
    best.unwrap()
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

/// All associative tables of the given order, in lexicographic cell
/// order; `dedup` keeps one representative per isomorphism class.
pub fn enumerate_semigroups(
    n: usize,
    budget: &SearchBudget,
    dedup: bool,
) -> Result<Vec<FiniteSemigroup>> {
    let mut out = Vec::new();
    enumerate_semigroups_with(n, budget, dedup, |s| {
        out.push(s.clone());
        Ok(())
    })?;
    Ok(out)
}

/// Streaming form of enumerate_semigroups.
pub fn enumerate_semigroups_with(
    n: usize,
    budget: &SearchBudget,
    dedup: bool,
    mut f: impl FnMut(&FiniteSemigroup) -> Result<()>,
) -> Result<()> {
    if n == 0 || n > budget.max_order {
        return Err(SgError::Exhausted(format!(
            "order {n} outside budget max_order {}",
            budget.max_order
        )));
    }
    let mut state = BudgetState::new(budget);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut table = vec![UNSET; n * n];
    fill_cells(n, &mut table, 0, &mut state, &mut |t| {
        let s = FiniteSemigroup::validate(n, t.to_vec())
            .map_err(|e| SgError::InternalInconsistency(format!("pruned table invalid: {e}")))?;
        if dedup && !seen.insert(canonical_form(&s)) {
            return Ok(false);
        }
        f(&s)?;
        Ok(false)
    })?;
    Ok(())
}

/// All semigroups of order `n` whose restriction to the first |S|
/// indices is exactly S.
pub fn enumerate_extensions(
    s: &FiniteSemigroup,
    n: usize,
    budget: &SearchBudget,
) -> Result<Vec<Embedding>> {
    let mut out = Vec::new();
    enumerate_extensions_with(s, n, budget, |e| {
        out.push(e.clone());
        Ok(())
    })?;
    Ok(out)
}

pub fn enumerate_extensions_with(
    s: &FiniteSemigroup,
    n: usize,
    budget: &SearchBudget,
    mut f: impl FnMut(&Embedding) -> Result<()>,
) -> Result<()> {
    let m = s.order();
    assert!(n >= m, "extension order below |S|");
    if n > budget.max_order {
        return Err(SgError::Exhausted(format!(
            "order {n} outside budget max_order {}",
            budget.max_order
        )));
    }
    let mut state = BudgetState::new(budget);
    let mut table = vec![UNSET; n * n];
    for a in 0..m {
        for b in 0..m {
            table[a * n + b] = s.mul(a, b);
        }
    }
    let members: Vec<usize> = (0..m).collect();
    fill_cells(n, &mut table, 0, &mut state, &mut |t| {
        let q = FiniteSemigroup::validate(n, t.to_vec())
            .map_err(|e| SgError::InternalInconsistency(format!("pruned table invalid: {e}")))?;
        let e = Embedding::new(q, &members)?;
        f(&e)?;
        Ok(false)
    })?;
    Ok(())
}

/// First extension, in canonical order, in which S is a straight left
/// order and the induced pair equals `pair`. Ok(None) means the search
/// completed up to the budget's max order without finding one, which is
/// weaker than non-existence.
pub fn find_quotient_semigroup(
    s: &FiniteSemigroup,
    pair: &StarPair,
    budget: &SearchBudget,
) -> Result<Option<Embedding>> {
    let m = s.order();
    let mut found: Option<Embedding> = None;
    for n in m..=budget.max_order.max(m) {
        if n > budget.max_order {
            break;
        }
        let res = enumerate_extensions_with(s, n, budget, |e| {
            let report = crate::orders::check_left_order(e)?;
            if report.is_straight {
                let induced = induced_star_pair(e.q(), e.s())?;
                if induced.leq_l().same_pairs(pair.leq_l())
                    && induced.leq_r().same_pairs(pair.leq_r())
                {
                    found = Some(e.clone());
                    return Err(SgError::Exhausted("found".into()));
                }
            }
            Ok(())
        });
        match res {
            Ok(()) => {}
            Err(SgError::Exhausted(_)) if found.is_some() => return Ok(found),
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// Independently computed relations for cross-checking: principal-ideal
/// set containment for Green's preorders, kernel containment for the
/// starred preorders, and chain reachability for <=_J*.
#[derive(Debug, Clone)]
pub struct OracleRelations {
    pub leq_l: Relation,
    pub leq_r: Relation,
    pub leq_j: Relation,
    pub l: Relation,
    pub r: Relation,
    pub h: Relation,
    pub d: Relation,
    pub j: Relation,
    pub leq_lstar: Relation,
    pub leq_rstar: Relation,
    pub lstar: Relation,
    pub rstar: Relation,
    pub hstar: Relation,
    pub dstar: Relation,
    pub leq_jstar: Relation,
}

pub fn oracle_relations(s: &FiniteSemigroup) -> OracleRelations {
    let n = s.order();

    let left_ideal = |a: usize| -> HashSet<usize> {
        let mut set: HashSet<usize> = (0..n).map(|x| s.mul(x, a)).collect();
        set.insert(a);
        set
    };
    let right_ideal = |a: usize| -> HashSet<usize> {
        let mut set: HashSet<usize> = (0..n).map(|x| s.mul(a, x)).collect();
        set.insert(a);
        set
    };
    let two_sided = |a: usize| -> HashSet<usize> {
        let mut set = HashSet::new();
        set.insert(a);
        for x in 0..n {
            set.insert(s.mul(x, a));
            set.insert(s.mul(a, x));
            for y in 0..n {
                set.insert(s.mul(s.mul(x, a), y));
            }
        }
        set
    };
    let li: Vec<_> = (0..n).map(left_ideal).collect();
    let ri: Vec<_> = (0..n).map(right_ideal).collect();
    let ti: Vec<_> = (0..n).map(two_sided).collect();

    let leq_l = Relation::from_fn(n, |a, b| li[a].is_subset(&li[b]));
    let leq_r = Relation::from_fn(n, |a, b| ri[a].is_subset(&ri[b]));
    let leq_j = Relation::from_fn(n, |a, b| ti[a].is_subset(&ti[b]));
    let l = Relation::from_fn(n, |a, b| li[a] == li[b]);
    let r = Relation::from_fn(n, |a, b| ri[a] == ri[b]);
    let h = Relation::from_fn(n, |a, b| l.get(a, b) && r.get(a, b));
    let d = Relation::from_fn(n, |a, b| (0..n).any(|c| l.get(a, c) && r.get(c, b)));
    let j = Relation::from_fn(n, |a, b| ti[a] == ti[b]);

    // kernel of right translation by a over S^1, with n as the identity
    let ker_right = |a: usize| -> HashSet<(usize, usize)> {
        let mut set = HashSet::new();
        for x in 0..=n {
            for y in 0..=n {
                if green::mul1(s, a, x) == green::mul1(s, a, y) {
                    set.insert((x, y));
                }
            }
        }
        set
    };
    let ker_left = |a: usize| -> HashSet<(usize, usize)> {
        let mut set = HashSet::new();
        for x in 0..=n {
            for y in 0..=n {
                if green::mul1(s, x, a) == green::mul1(s, y, a) {
                    set.insert((x, y));
                }
            }
        }
        set
    };
    let kr: Vec<_> = (0..n).map(ker_right).collect();
    let kl: Vec<_> = (0..n).map(ker_left).collect();
    let leq_lstar = Relation::from_fn(n, |a, b| kr[b].is_subset(&kr[a]));
    let leq_rstar = Relation::from_fn(n, |a, b| kl[b].is_subset(&kl[a]));
    let lstar = Relation::from_fn(n, |a, b| kr[a] == kr[b]);
    let rstar = Relation::from_fn(n, |a, b| kl[a] == kl[b]);
    let hstar = Relation::from_fn(n, |a, b| lstar.get(a, b) && rstar.get(a, b));

    // D* as reachability through alternating L*/R* steps
    let dstar = Relation::from_fn(n, |a, b| {
        let mut reach = vec![false; n];
        reach[a] = true;
        loop {
            let mut grew = false;
            for x in 0..n {
                if !reach[x] {
                    continue;
                }
                for y in 0..n {
                    if !reach[y] && (lstar.get(x, y) || rstar.get(x, y)) {
                        reach[y] = true;
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        reach[b]
    });

    // a <=_J* b iff a is reachable from b by steps c ~D* x d y
    let leq_jstar = Relation::from_fn(n, |a, b| {
        let mut reach = vec![false; n];
        reach[b] = true;
        loop {
            let mut grew = false;
            for c in 0..n {
                if reach[c] {
                    continue;
                }
                'outer: for dd in 0..n {
                    if !reach[dd] {
                        continue;
                    }
                    for x in 0..=n {
                        for y in 0..=n {
                            let prod = green::mul1(s, green::mul1(s, x, dd), y);
                            if dstar.get(c, prod) {
                                reach[c] = true;
                                grew = true;
                                break 'outer;
                            }
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        }
        reach[a]
    });

    OracleRelations {
        leq_l,
        leq_r,
        leq_j,
        l,
        r,
        h,
        d,
        j,
        leq_lstar,
        leq_rstar,
        lstar,
        rstar,
        hstar,
        dstar,
        leq_jstar,
    }
}

/// Persist a list of semigroups as blank-line-separated table blocks
/// behind a manifest comment line.
pub fn stream_to_string(
    list: &[FiniteSemigroup],
    budget: &SearchBudget,
    complete: bool,
) -> String {
    let mut out = format!(
        "# stream order<={} tables={} time={} complete={}\n",
        budget.max_order,
        budget
            .max_tables
            .map_or("none".to_string(), |t| t.to_string()),
        budget
            .time_limit
            .map_or("none".to_string(), |t| t.to_string()),
        complete
    );
    for s in list {
        out.push('\n');
        out.push_str(&s.to_table_text());
    }
    out
}

/// Inverse of stream_to_string; the boolean is the manifest's
/// completeness flag.
pub fn stream_from_str(text: &str) -> Result<(Vec<FiniteSemigroup>, bool)> {
    let mut lines = text.lines();
    let manifest = lines.next().ok_or(SgError::Parse {
        line: 1,
        msg: "empty stream".into(),
    })?;
    if !manifest.starts_with("# stream ") {
        return Err(SgError::Parse {
            line: 1,
            msg: "missing stream manifest".into(),
        });
    }
    let complete = manifest.contains("complete=true");
    let mut list = Vec::new();
    let mut block = String::new();
    for line in lines.chain(std::iter::once("")) {
        if line.trim().is_empty() {
            if !block.trim().is_empty() {
                list.push(FiniteSemigroup::from_table_text(&block)?);
            }
            block.clear();
        } else {
            block.push_str(line);
            block.push('\n');
        }
    }
    Ok((list, complete))
}

/// Count of all n^(n^2) tables that are associative, by direct filter.
/// Deliberately shares no code with the backtracking generator.
pub fn exhaustive_filter_count(n: usize) -> (u64, u64) {
    let cells = n * n;
    let total = (n as u64).pow(cells as u32);
    let mut assoc = 0u64;
    let mut table = vec![0usize; cells];
    for code in 0..total {
        let mut c = code;
        for cell in 0..cells {
            table[cell] = (c % n as u64) as usize;
            c /= n as u64;
        }
        let ok = (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    table[table[a * n + b] * n + c] == table[a * n + table[b * n + c]]
                })
            })
        });
        if ok {
            assoc += 1;
        }
    }
    (total, assoc)
}
