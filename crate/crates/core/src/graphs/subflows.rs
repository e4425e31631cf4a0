use std::ops::ControlFlow;

use super::flow::IntFlow;

/// A maximal directed path (or closed cycle) through subdivision vertices of
/// a flow support. Every circulation below the flow is constant on it.
#[derive(Debug, Clone)]
struct Chain {
    edges: Vec<(usize, usize)>,
    cap: i64,
    start: usize,
    end: usize,
    closed: bool,
}

fn chains(d: &IntFlow) -> Vec<Chain> {
    let n = d.n();
    let mut outs = vec![Vec::new(); n];
    let mut ins = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if *d.get(i, j) > 0 {
                outs[i].push(j);
                ins[j].push(i);
            }
        }
    }
    let subdivision = |v: usize| ins[v].len() == 1 && outs[v].len() == 1 && outs[v][0] != v;
    let mut used = vec![false; n * n];
    let mut result = Vec::new();
    let walk = |start: usize, first: usize, used: &mut Vec<bool>| {
        let mut edges = vec![(start, first)];
        used[start * n + first] = true;
        let mut cur = first;
        while subdivision(cur) && cur != start {
            let next = outs[cur][0];
            if used[cur * n + next] {
                break;
            }
            used[cur * n + next] = true;
            edges.push((cur, next));
            cur = next;
        }
        let cap = edges.iter().map(|&(a, b)| *d.get(a, b)).min().unwrap();
        Chain {
            closed: cur == start && subdivision(start),
            edges,
            cap,
            start,
            end: cur,
        }
    };
    for v in 0..n {
        if subdivision(v) {
            continue;
        }
        for &w in &outs[v] {
            if !used[v * n + w] {
                result.push(walk(v, w, &mut used));
            }
        }
    }
    // Components made only of subdivision vertices are simple cycles.
    for v in 0..n {
        for &w in &outs[v] {
            if !used[v * n + w] {
                result.push(walk(v, w, &mut used));
            }
        }
    }
    result
}

/// Visit every conserving integral `e` with `0 ≤ e ≤ d` (including `0` and
/// `d`), in a fixed order. `d` must be a flow.
pub fn for_each_sub_circulation<B>(
    d: &IntFlow,
    mut visit: impl FnMut(&IntFlow) -> ControlFlow<B>,
) -> Option<B> {
    let n = d.n();
    let chains = chains(d);
    // For each junction vertex, the last chain index touching it; the
    // balance there is checked once that chain is assigned.
    let mut last_touch = vec![None; n];
    for (k, c) in chains.iter().enumerate() {
        if !c.closed {
            last_touch[c.start] = Some(k);
            last_touch[c.end] = Some(k);
        }
    }
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); chains.len()];
    for (v, lt) in last_touch.iter().enumerate() {
        if let Some(k) = lt {
            checks[*k].push(v);
        }
    }
    let mut balance = vec![0i64; n];
    let mut values = vec![0i64; chains.len()];

    fn rec<B>(
        k: usize,
        chains: &[Chain],
        checks: &[Vec<usize>],
        balance: &mut [i64],
        values: &mut [i64],
        n: usize,
        visit: &mut impl FnMut(&IntFlow) -> ControlFlow<B>,
    ) -> Option<B> {
        if k == chains.len() {
            let mut e = IntFlow::zero(n);
            for (c, &v) in chains.iter().zip(values.iter()) {
                if v != 0 {
                    for &(a, b) in &c.edges {
                        let cur = *e.get(a, b);
                        e.set(a, b, cur + v);
                    }
                }
            }
            return match visit(&e) {
                ControlFlow::Break(b) => Some(b),
                ControlFlow::Continue(()) => None,
            };
        }
        let c = &chains[k];
        for v in 0..=c.cap {
            values[k] = v;
            if !c.closed {
                balance[c.start] -= v;
                balance[c.end] += v;
            }
            let ok = checks[k].iter().all(|&u| balance[u] == 0);
            let out = if ok {
                rec(k + 1, chains, checks, balance, values, n, visit)
            } else {
                None
            };
            if !c.closed {
                balance[c.start] += v;
                balance[c.end] -= v;
            }
            if out.is_some() {
                values[k] = 0;
                return out;
            }
        }
        values[k] = 0;
        None
    }

    rec(0, &chains, &checks, &mut balance, &mut values, n, &mut visit)
}

/// All conserving integral `e` with `0 ≤ e ≤ d`.
pub fn sub_circulations(d: &IntFlow) -> Vec<IntFlow> {
    let mut out = Vec::new();
    for_each_sub_circulation::<()>(d, |e| {
        out.push(e.clone());
        ControlFlow::Continue(())
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_has_two_sub_circulations() {
        let c = IntFlow::cycle(3, &[0, 1, 2]);
        assert_eq!(sub_circulations(&c).len(), 2);
        assert_eq!(sub_circulations(&c.scale(3)).len(), 4);
    }

    #[test]
    fn matches_brute_force() {
        // Both Hamiltonian 3-cycles plus a loop at 0 with value 2.
        let mut d = IntFlow::cycle(3, &[0, 1, 2]).add(&IntFlow::cycle(3, &[0, 2, 1]));
        d.set(0, 0, 2);
        let fast = sub_circulations(&d);
        let mut brute = Vec::new();
        let caps: Vec<i64> = d.entries().to_vec();
        let total: usize = caps.iter().map(|&c| (c + 1) as usize).product();
        for mut code in 0..total {
            let mut entries = Vec::new();
            for &c in &caps {
                entries.push((code % (c as usize + 1)) as i64);
                code /= c as usize + 1;
            }
            let e = IntFlow::from_entries(3, entries).unwrap();
            if e.is_conserving() {
                brute.push(e);
            }
        }
        let mut fast_sorted = fast.clone();
        fast_sorted.sort();
        brute.sort();
        assert_eq!(fast_sorted, brute);
    }
}
