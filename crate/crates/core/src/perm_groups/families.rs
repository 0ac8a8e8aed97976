use crate::error::{Error, Result};
use crate::partitions::Partition;

use super::{PermGroup, Permutation};

/// `S_n` generated by the adjacent transpositions.
pub fn symmetric(n: usize) -> PermGroup {
    young(&[n]).expect("a single block is a composition")
}

/// `A_n` generated by `(1,2,3)` and an `n`- or `(n-1)`-cycle of the right parity.
pub fn alternating(n: usize) -> PermGroup {
    if n < 3 {
        return PermGroup::new(n, Vec::new()).expect("no generators");
    }
    let long: Vec<usize> = if n % 2 == 1 { (1..=n).collect() } else { (2..=n).collect() };
    let gens = vec![
        Permutation::from_cycles(n, &[&[1, 2, 3]]).expect("valid cycle"),
        Permutation::from_cycles(n, &[&long]).expect("valid cycle"),
    ];
    PermGroup::new(n, gens).expect("same degree")
}

/// The Young subgroup `S_{μ_1} × S_{μ_2} × …` on consecutive blocks of points.
/// `μ` may be any composition; zero parts are ignored.
pub fn young(mu: &[usize]) -> Result<PermGroup> {
    let n: usize = mu.iter().sum();
    let mut gens = Vec::new();
    let mut start = 1;
    for &m in mu {
        for i in start..start + m.saturating_sub(1) {
            gens.push(Permutation::adjacent(n, i));
        }
        start += m;
    }
    PermGroup::new(n, gens)
}

pub fn young_of(mu: &Partition) -> PermGroup {
    young(mu.parts()).expect("partitions are compositions")
}

/// `S_{n-k} × S_k`.
pub fn intransitive(n: usize, k: usize) -> Result<PermGroup> {
    if k > n {
        return Err(Error::Precondition(format!("intransitive:{n}:{k} needs k <= n")));
    }
    young(&[n - k, k])
}

/// `S_a ≀ S_b` on `ab` points, block `i` being `{(i-1)a+1, …, ia}`.
pub fn wreath(a: usize, b: usize) -> Result<PermGroup> {
    if a == 0 || b == 0 {
        return Err(Error::Precondition(format!("wreath:{a}:{b} needs positive parameters")));
    }
    let n = a * b;
    let mut gens = Vec::new();
    if a >= 2 {
        gens.push(Permutation::transposition(n, 1, 2));
    }
    if a >= 3 {
        let cyc: Vec<usize> = (1..=a).collect();
        gens.push(Permutation::from_cycles(n, &[&cyc])?);
    }
    if b >= 2 {
        let swap: Vec<Vec<usize>> = (1..=a).map(|x| vec![x, x + a]).collect();
        let refs: Vec<&[usize]> = swap.iter().map(|c| c.as_slice()).collect();
        gens.push(Permutation::from_cycles(n, &refs)?);
    }
    if b >= 3 {
        let rot: Vec<Vec<usize>> = (1..=a).map(|x| (0..b).map(|j| x + j * a).collect()).collect();
        let refs: Vec<&[usize]> = rot.iter().map(|c| c.as_slice()).collect();
        gens.push(Permutation::from_cycles(n, &refs)?);
    }
    PermGroup::new(n, gens)
}

/// Primitive groups shipped as generator files, with their degrees and orders.
pub const NAMED_GROUPS: &[(&str, usize, u128)] = &[
    ("c5_c4", 5, 20),
    ("s5_on_6", 6, 120),
    ("s6_on_10", 10, 720),
    ("pgl2_9", 10, 720),
    ("m10", 10, 720),
    ("aut_a6", 10, 1440),
    ("m12", 12, 95040),
    ("sl2_8_3", 28, 1512),
];

fn named_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "c5_c4" => include_str!("../../data/groups/c5_c4.gens"),
        "s5_on_6" => include_str!("../../data/groups/s5_on_6.gens"),
        "s6_on_10" => include_str!("../../data/groups/s6_on_10.gens"),
        "sl2_8_3" => include_str!("../../data/groups/sl2_8_3.gens"),
        "pgl2_9" => include_str!("../../data/groups/pgl2_9.gens"),
        "m10" => include_str!("../../data/groups/m10.gens"),
        "aut_a6" => include_str!("../../data/groups/aut_a6.gens"),
        "m12" => include_str!("../../data/groups/m12.gens"),
        _ => return None,
    })
}

/// One of [`NAMED_GROUPS`], checked against its recorded order.
pub fn named(name: &str) -> Result<PermGroup> {
    let &(_, degree, order) = NAMED_GROUPS
        .iter()
        .find(|(n, _, _)| *n == name)
        .ok_or_else(|| Error::Parse(format!("unknown group {name:?}")))?;
    let g = PermGroup::parse_generators(named_text(name).expect("listed"), degree)?;
    if g.order() != order {
        return Err(Error::Precondition(format!("{name} has order {} instead of {order}", g.order())));
    }
    Ok(g)
}

/// Parses `Sn`, `An`, `young:μ`, `wreath:a:b`, `intransitive:n:k`, `named:NAME`
/// and `gens:FILE` (read from disk). `n` fills in the degree for `Sn`, `An`.
pub fn parse_group_spec(spec: &str, n: usize) -> Result<PermGroup> {
    let spec = spec.trim();
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad number {s:?} in {spec:?}")));
    let fields: Vec<&str> = spec.split(':').collect();
    let g = match fields.as_slice() {
        ["Sn"] => symmetric(n),
        ["An"] => alternating(n),
        ["Sn-1"] => intransitive(n, 1)?,
        ["young", mu] => {
            let parts = mu
                .trim_matches(|c| c == '(' || c == ')')
                .split(',')
                .map(num)
                .collect::<Result<Vec<_>>>()?;
            young(&parts)?
        }
        ["wreath", a, b] => wreath(num(a)?, num(b)?)?,
        ["intransitive", m, k] => intransitive(num(m)?, num(k)?)?,
        ["named", name] => named(name)?,
        ["gens", path] => {
            let text = std::fs::read_to_string(path)?;
            PermGroup::parse_generators(&text, n)?
        }
        _ => return Err(Error::Parse(format!("unknown group spec {spec:?}"))),
    };
    if g.degree() != n {
        return Err(Error::Precondition(format!("{spec} has degree {}, expected {n}", g.degree())));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: u128) -> u128 {
        (1..=n).product()
    }

    #[test]
    fn family_orders() {
        for n in 1..=7 {
            assert_eq!(symmetric(n).order(), factorial(n as u128));
        }
        for n in 3..=8 {
            assert_eq!(alternating(n).order(), factorial(n as u128) / 2);
        }
        assert_eq!(wreath(3, 2).unwrap().order(), 72);
        assert_eq!(wreath(2, 3).unwrap().order(), 48);
        assert_eq!(wreath(3, 3).unwrap().order(), 6u128.pow(3) * 6);
        assert_eq!(intransitive(6, 3).unwrap().order(), 36);
        assert_eq!(young(&[3, 0, 2, 1]).unwrap().order(), 12);
    }

    #[test]
    fn named_groups_have_recorded_orders() {
        for &(name, degree, order) in NAMED_GROUPS {
            let g = named(name).unwrap();
            assert_eq!((g.degree(), g.order()), (degree, order));
            assert!(g.is_primitive(), "{name}");
        }
    }

    #[test]
    fn three_groups_of_order_720_differ() {
        // S6, PGL(2,9) and M10 are told apart by their largest element orders 6, 10, 8
        let max_order = |g: &PermGroup| g.elements().iter().map(|x| x.order()).max().unwrap();
        assert_eq!(max_order(&named("s6_on_10").unwrap()), 6);
        assert_eq!(max_order(&named("pgl2_9").unwrap()), 10);
        assert_eq!(max_order(&named("m10").unwrap()), 8);
    }

    #[test]
    fn specs_parse() {
        assert_eq!(parse_group_spec("wreath:5:2", 10).unwrap().order(), 120 * 120 * 2);
        assert_eq!(parse_group_spec("young:(2,2,1)", 5).unwrap().order(), 4);
        assert_eq!(parse_group_spec("An", 6).unwrap().order(), 360);
        assert!(parse_group_spec("wreath:5:2", 9).is_err());
        assert!(parse_group_spec("bogus", 4).is_err());
    }

    #[test]
    fn wreath_orbit_counts() {
        let w = wreath(3, 2).unwrap();
        assert_eq!(w.orbit_count_k_subsets(2), 2);
        assert!(w.is_transitive());
        assert!(!w.is_k_homogeneous(2));
        assert!(alternating(4).is_k_transitive(2));
        assert_eq!(w.half_block_system(), Some(vec![0, 1, 2]));
    }
}
