//! Finite abelian group invariants from element orders.

use num_integer::Integer;
use std::collections::BTreeMap;

pub fn prime_factors(mut n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

/// Invariant factors `d_1 | d_2 | ...` (ascending, no 1s) of an abelian group
/// given the multiset of its element orders.
pub fn invariants_from_orders(orders: &[u64]) -> Vec<u64> {
    let m = orders.len() as u64;
    let mut primary: Vec<Vec<u64>> = vec![];
    for (p, _) in prime_factors(m) {
        // c_j = #{g : ord(g) | p^j} = p^{sum_i min(j, e_i)}
        let mut logs = vec![0u32];
        let mut j = 1u32;
        loop {
            let pj = p.pow(j);
            let c = orders.iter().filter(|&&o| pj % o == 0).count() as u64;
            let mut l = 0;
            let mut c2 = c;
            while c2 > 1 {
                c2 /= p;
                l += 1;
            }
            logs.push(l);
            if c == p.pow(prime_factors(m)[&p]) {
                break;
            }
            j += 1;
        }
        // number of factors with exponent >= j
        let ge: Vec<u32> = (1..logs.len()).map(|j| logs[j] - logs[j - 1]).collect();
        let mut exps = vec![];
        for (j, &cnt) in ge.iter().enumerate() {
            let next = ge.get(j + 1).copied().unwrap_or(0);
            for _ in 0..(cnt - next) {
                exps.push(p.pow(j as u32 + 1));
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        primary.push(exps);
    }
    let len = primary.iter().map(|v| v.len()).max().unwrap_or(0);
    let mut inv = vec![1u64; len];
    for v in &primary {
        for (i, q) in v.iter().enumerate() {
            inv[i] *= q;
        }
    }
    inv.reverse();
    inv.retain(|&d| d > 1);
    inv
}

/// Invariant factors of `Z_{f_1} x Z_{f_2} x ...`.
pub fn invariants_of_cyclic_product(factors: &[u64]) -> Vec<u64> {
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &f in factors {
        for (p, e) in prime_factors(f) {
            by_prime.entry(p).or_default().push(p.pow(e));
        }
    }
    let len = by_prime.values().map(|v| v.len()).max().unwrap_or(0);
    let mut inv = vec![1u64; len];
    for v in by_prime.values_mut() {
        v.sort_unstable_by(|a, b| b.cmp(a));
        for (i, q) in v.iter().enumerate() {
            inv[i] *= q;
        }
    }
    inv.reverse();
    inv.retain(|&d| d > 1);
    inv
}

/// Multiplicative order of `b` modulo `m`, for `b` a unit.
pub fn mult_order(b: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut x = b % m;
    let mut k = 1;
    while x != 1 {
        x = x * b % m;
        k += 1;
    }
    k
}

pub fn unit_group(m: u64) -> Vec<u64> {
    if m == 1 {
        return vec![0];
    }
    (1..m).filter(|b| b.gcd(&m) == 1).collect()
}

/// Invariant factors of `Z_m^x`.
pub fn unit_group_invariants(m: u64) -> Vec<u64> {
    let orders: Vec<u64> = unit_group(m).iter().map(|&b| mult_order(b, m)).collect();
    invariants_from_orders(&orders)
}

pub fn euler_phi(m: u64) -> u64 {
    prime_factors(m)
        .iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

pub fn lcm_all(xs: impl IntoIterator<Item = u64>) -> u64 {
    xs.into_iter().fold(1, |a, b| a.lcm(&b))
}

pub fn format_invariants(inv: &[u64]) -> String {
    if inv.is_empty() {
        "trivial".into()
    } else {
        inv.iter()
            .map(|d| format!("Z{d}"))
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orders_of_product(factors: &[u64]) -> Vec<u64> {
        let mut out = vec![1u64];
        for &f in factors {
            let mut next = vec![];
            for o in &out {
                for x in 0..f {
                    let ox = f / x.gcd(&f);
                    next.push(o.lcm(&ox));
                }
            }
            out = next;
        }
        out
    }

    #[test]
    fn known_groups() {
        assert_eq!(invariants_from_orders(&orders_of_product(&[2, 2])), vec![2, 2]);
        assert_eq!(invariants_from_orders(&orders_of_product(&[4, 6])), vec![2, 12]);
        assert_eq!(invariants_from_orders(&orders_of_product(&[3, 5])), vec![15]);
        assert_eq!(invariants_from_orders(&orders_of_product(&[2, 4, 8])), vec![2, 4, 8]);
        assert_eq!(invariants_from_orders(&[1]), Vec::<u64>::new());
        assert_eq!(format_invariants(&[2, 2]), "Z2 x Z2");
    }

    #[test]
    fn unit_groups() {
        assert_eq!(unit_group_invariants(8), vec![2, 2]);
        assert_eq!(unit_group_invariants(9), vec![6]);
        assert_eq!(unit_group_invariants(15), vec![2, 4]);
        assert_eq!(unit_group_invariants(2), Vec::<u64>::new());
        for m in 1..60 {
            assert_eq!(unit_group(m).len() as u64, euler_phi(m));
        }
        assert_eq!(invariants_of_cyclic_product(&[2, 4, 6]), vec![2, 2, 12]);
    }

    proptest::proptest! {
        #[test]
        fn cyclic_products_agree(a in 1u64..20, b in 1u64..20, c in 1u64..8) {
            let orders = orders_of_product(&[a, b, c]);
            proptest::prop_assert_eq!(invariants_from_orders(&orders), invariants_of_cyclic_product(&[a, b, c]));
        }
    }

    #[test]
    fn factor_roundtrip() {
        for a in 1..12u64 {
            for b in 1..12u64 {
                let inv = invariants_from_orders(&orders_of_product(&[a, b]));
                assert_eq!(inv.iter().product::<u64>(), a * b);
                let g = a.gcd(&b);
                let expect: Vec<u64> = [g, a * b / g].into_iter().filter(|&d| d > 1).collect();
                assert_eq!(inv, expect);
            }
        }
    }
}
