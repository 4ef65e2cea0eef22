use mmforge::FamilyDescriptor;

/// Non-decreasing lists of ordered pairs `(p, q)` with total size at most `budget`.
fn pair_lists(budget: usize, min: (usize, usize), out: &mut Vec<Vec<(usize, usize)>>, cur: &mut Vec<(usize, usize)>) {
    out.push(cur.clone());
    for p in 1..=budget {
        for q in 1..=budget - p.min(budget) {
            if p + q > budget || (p, q) < min {
                continue;
            }
            cur.push((p, q));
            pair_lists(budget - p - q, (p, q), out, cur);
            cur.pop();
        }
    }
}

pub fn descriptors(max_n: usize) -> Vec<FamilyDescriptor> {
    let mut lists = Vec::new();
    pair_lists(max_n, (0, 0), &mut lists, &mut Vec::new());
    let mut out = Vec::new();
    for pairs in &lists {
        let used: usize = pairs.iter().map(|(p, q)| p + q).sum();
        for p0 in 0..=max_n - used {
            if p0 == 1 && pairs.len() == 1 {
                continue;
            }
            for r in 0..=max_n - used - p0 {
                let n = used + p0 + r;
                if n >= 4 {
                    out.push(FamilyDescriptor::ComplementForm { p0, pairs: pairs.clone(), r });
                }
            }
        }
    }
    out
}
