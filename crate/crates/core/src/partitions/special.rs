use crate::error::{Error, Result};

use super::{cogood_node, epsilon, good_node, phi, Partition};

/// α_n = (n-1, 1).
pub fn alpha(n: usize) -> Result<Partition> {
    if n < 2 {
        return Err(Error::Precondition(format!("alpha needs n >= 2, got {n}")));
    }
    Ok(Partition::from_parts(&[n - 1, 1]))
}

/// β_n: the two-row partition labelling the basic spin module in characteristic 2.
pub fn beta(n: usize) -> Result<Partition> {
    if n < 2 {
        return Err(Error::Precondition(format!("beta needs n >= 2, got {n}")));
    }
    Ok(if n % 2 == 0 {
        Partition::from_parts(&[n / 2 + 1, n / 2 - 1])
    } else {
        Partition::from_parts(&[n.div_ceil(2), n / 2])
    })
}

/// The index `j` with `λ_j = λ_{j+1} + 2` and
/// `λ_1 ≡ … ≡ λ_{j-1} ≢ λ_j ≡ λ_{j+1} ≢ λ_{j+2} ≡ … ≡ λ_h` (mod 2), if any.
/// Only meaningful for 2-regular partitions with at least three rows.
pub fn parity_chain_index(l: &Partition) -> Option<usize> {
    let h = l.height();
    if h < 3 || !l.is_p_regular(2) {
        return None;
    }
    let par = |r: usize| l.part(r) % 2;
    let same = |from: usize, to: usize| from > to || (from..=to).all(|r| par(r) == par(from));
    (1..=h).find(|&j| {
        l.part(j) == l.part(j + 1) + 2
            && same(1, j - 1)
            && (j == 1 || par(j - 1) != par(j))
            && par(j) == par(j + 1)
            && (j + 2 > h || par(j + 1) != par(j + 2))
            && same(j + 2, h)
    })
}

/// Shape of `(λ_B)^C` where `B` is the good and `C` the cogood node of the
/// same residue, for a 2-regular λ with exactly two normal nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingularCase {
    /// `(λ_B)^C` is 2-regular.
    Regular,
    /// Singular with the good node in row `j < h(λ)`.
    ShiftedPair { j: usize },
    /// Singular with the good node in the last row, which then has length 2.
    LastRowTwo,
}

pub fn singular_removal_case(l: &Partition, i: u32) -> Result<SingularCase> {
    l.require_p_regular(2)?;
    let total = epsilon(l, 0, 2) + epsilon(l, 1, 2);
    if total != 2 || epsilon(l, i, 2) == 0 || phi(l, i, 2) == 0 {
        return Err(Error::Precondition(format!(
            "{l} needs two normal nodes in total and eps_{i}, phi_{i} > 0"
        )));
    }
    let b = good_node(l, i, 2).expect("eps > 0");
    let c = cogood_node(l, i, 2).expect("phi > 0");
    if !(c.row == b.row + 1 && c.col + 1 == b.col) {
        return Ok(SingularCase::Regular);
    }
    Ok(if b.row == l.height() { SingularCase::LastRowTwo } else { SingularCase::ShiftedPair { j: b.row } })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(x: &[usize]) -> Partition {
        Partition::from_parts(x)
    }

    #[test]
    fn alpha_beta_values() {
        assert_eq!(beta(10).unwrap(), part(&[6, 4]));
        assert_eq!(beta(11).unwrap(), part(&[6, 5]));
        assert_eq!(alpha(6).unwrap(), part(&[5, 1]));
        assert!(beta(1).is_err());
    }

    #[test]
    fn parity_chain_examples() {
        assert_eq!(parity_chain_index(&part(&[5, 4, 2])), Some(2));
        assert_eq!(parity_chain_index(&part(&[6, 5, 3, 2])), Some(2));
        assert_eq!(parity_chain_index(&part(&[7, 5, 3])), None);
    }

    #[test]
    fn singular_case_example() {
        assert_eq!(singular_removal_case(&part(&[5, 4, 2]), 0).unwrap(), SingularCase::ShiftedPair { j: 2 });
    }

    #[test]
    fn singular_case_matches_direct_check() {
        // whenever a case is reported singular, adding C to λ_B really repeats a part
        for n in 3..=14 {
            for l in crate::partitions::enumerate_p_regular(n, 2) {
                for i in 0..2 {
                    let Ok(case) = singular_removal_case(&l, i) else { continue };
                    let b = good_node(&l, i, 2).unwrap();
                    let c = cogood_node(&l, i, 2).unwrap();
                    let mid = l.remove_node(b).unwrap();
                    let out = mid.add_node(c);
                    let singular = out.map(|m| !m.is_p_regular(2)).unwrap_or(false);
                    assert_eq!(singular, case != SingularCase::Regular, "{l} i={i}");
                    if case == SingularCase::LastRowTwo {
                        assert_eq!(l.part(l.height()), 2);
                        assert!((1..l.height()).all(|r| l.part(r) % 2 == 1));
                    }
                }
            }
        }
    }
}
