//! Partitions as types of finite abelian p-groups, and the
//! Littlewood–Richardson test that decides which short exact sequences of
//! p-groups exist.

/// A partition stored largest part first, without zero parts.
pub type Partition = Vec<u32>;

pub fn size(p: &[u32]) -> u32 {
    p.iter().sum()
}

fn part(p: &[u32], i: usize) -> u32 {
    p.get(i).copied().unwrap_or(0)
}

/// `μ ⊆ λ` part by part; this is exactly when a p-group of type λ has a
/// subgroup (equivalently a quotient) of type μ.
pub fn contains(lambda: &[u32], mu: &[u32]) -> bool {
    mu.len() <= lambda.len() && mu.iter().zip(lambda).all(|(m, l)| m <= l)
}

/// All partitions contained in `lambda`, in a deterministic order.
pub fn sub_partitions(lambda: &[u32]) -> Vec<Partition> {
    fn go(lambda: &[u32], i: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == lambda.len() {
            let mut p = cur.clone();
            p.retain(|&x| x > 0);
            out.push(p);
            return;
        }
        for v in 0..=lambda[i].min(cap) {
            cur.push(v);
            go(lambda, i + 1, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(lambda, 0, u32::MAX, &mut Vec::new(), &mut out);
    out
}

/// All partitions of `n`.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn go(rest: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for v in (1..=rest.min(cap)).rev() {
            cur.push(v);
            go(rest - v, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Whether the Littlewood–Richardson coefficient `c^λ_{μν}` is nonzero,
/// i.e. whether some p-group of type λ has a subgroup of type μ with
/// quotient of type ν.
pub fn lr_nonzero(lambda: &[u32], mu: &[u32], nu: &[u32]) -> bool {
    if size(lambda) != size(mu) + size(nu) || !contains(lambda, mu) || !contains(lambda, nu) {
        return false;
    }
    // Cells of λ/μ in reading order: rows top to bottom, right to left.
    let mut cells = Vec::new();
    for (r, &len) in lambda.iter().enumerate() {
        for c in (part(mu, r)..len).rev() {
            cells.push((r, c));
        }
    }
    let mut filling = vec![vec![0u32; lambda.first().copied().unwrap_or(0) as usize]; lambda.len()];
    let mut counts = vec![0u32; nu.len() + 1];
    search(lambda, mu, nu, &cells, 0, &mut filling, &mut counts)
}

fn search(
    lambda: &[u32],
    mu: &[u32],
    nu: &[u32],
    cells: &[(usize, u32)],
    idx: usize,
    filling: &mut [Vec<u32>],
    counts: &mut [u32],
) -> bool {
    let Some(&(r, c)) = cells.get(idx) else { return true };
    let c = c as usize;
    // Weakly increasing along the row: bounded by the cell to the right.
    let upper = if (c + 1) < lambda[r] as usize { filling[r][c + 1] } else { nu.len() as u32 };
    // Strictly increasing down the column, where the cell above is in the skew shape.
    let lower = if r > 0 && c >= part(mu, r - 1) as usize { filling[r - 1][c] + 1 } else { 1 };
    for v in lower..=upper {
        let vi = v as usize;
        if counts[vi] >= nu[vi - 1] {
            continue;
        }
        if vi > 1 && counts[vi] + 1 > counts[vi - 1] {
            continue;
        }
        counts[vi] += 1;
        filling[r][c] = v;
        if search(lambda, mu, nu, cells, idx + 1, filling, counts) {
            return true;
        }
        counts[vi] -= 1;
        filling[r][c] = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lr_basic_cases() {
        // Z_4 ⊃ Z_2 with quotient Z_2.
        assert!(lr_nonzero(&[2], &[1], &[1]));
        // Z_2 ⊕ Z_2 ⊃ Z_2 with quotient Z_2.
        assert!(lr_nonzero(&[1, 1], &[1], &[1]));
        // Z_4 does not sit inside Z_2 ⊕ Z_2.
        assert!(!lr_nonzero(&[1, 1], &[2], &[]));
        // Z_2 ⊕ Z_2 is not a quotient of Z_4.
        assert!(!lr_nonzero(&[2], &[], &[1, 1]));
        assert!(lr_nonzero(&[], &[], &[]));
        // Z_8 ⊕ Z_2 ⊃ Z_4 with quotient Z_2 ⊕ Z_2 (λ=(3,1), μ=(2), ν=(1,1)).
        assert!(lr_nonzero(&[3, 1], &[2], &[1, 1]));
        // Z_4 ⊕ Z_4 has no subgroup Z_2 ⊕ Z_2 with quotient Z_8? ν ⊄ λ.
        assert!(!lr_nonzero(&[2, 2], &[1], &[3]));
    }

    #[test]
    fn lr_is_symmetric_in_mu_nu() {
        let parts: Vec<Partition> = (0..=4).flat_map(partitions_of).collect();
        for l in parts.iter().filter(|p| size(p) == 4) {
            for m in &parts {
                for n in &parts {
                    assert_eq!(lr_nonzero(l, m, n), lr_nonzero(l, n, m), "{l:?} {m:?} {n:?}");
                }
            }
        }
    }

    #[test]
    fn enumeration() {
        assert_eq!(partitions_of(4).len(), 5);
        assert_eq!(partitions_of(0), vec![Vec::<u32>::new()]);
        let subs = sub_partitions(&[2, 1]);
        assert_eq!(subs.len(), 5); // (), (1), (2), (1,1), (2,1)
        assert!(subs.iter().all(|s| contains(&[2, 1], s)));
    }
}
