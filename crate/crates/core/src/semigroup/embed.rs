use super::FiniteSemigroup;

/// Searches for an injective homomorphism `t → s`.
///
/// Elements of `t` are assigned in ascending order, each trying images in
/// ascending order, so the witness returned is the lexicographically first.
pub fn embeds_into(t: &FiniteSemigroup, s: &FiniteSemigroup) -> Option<Vec<usize>> {
    if t.order() > s.order() {
        return None;
    }
    let mut image = vec![usize::MAX; t.order()];
    let mut used = vec![false; s.order()];
    if extend(t, s, 0, &mut image, &mut used) {
        Some(image)
    } else {
        None
    }
}

fn consistent(t: &FiniteSemigroup, s: &FiniteSemigroup, upto: usize, image: &[usize]) -> bool {
    // Only products whose factors and result are already mapped can be checked.
    let x = upto;
    (0..=upto).all(|y| {
        [(x, y), (y, x)].iter().all(|&(a, b)| {
            let ab = t.mul(a, b);
            ab > upto || image[ab] == s.mul(image[a], image[b])
        })
    }) && (0..upto)
        .all(|a| (0..upto).all(|b| t.mul(a, b) != x || image[x] == s.mul(image[a], image[b])))
}

fn extend(
    t: &FiniteSemigroup,
    s: &FiniteSemigroup,
    next: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if next == t.order() {
        return true;
    }
    for candidate in 0..s.order() {
        if used[candidate] {
            continue;
        }
        image[next] = candidate;
        used[candidate] = true;
        if consistent(t, s, next, image) && extend(t, s, next + 1, image, used) {
            return true;
        }
        used[candidate] = false;
        image[next] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_embedding(t: &FiniteSemigroup, s: &FiniteSemigroup, f: &[usize]) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        f.iter().all(|v| seen.insert(*v))
            && (0..t.order()).all(|a| (0..t.order()).all(|b| f[t.mul(a, b)] == s.mul(f[a], f[b])))
    }

    #[test]
    fn left_zero_restricts() {
        let f = embeds_into(
            &FiniteSemigroup::left_zero(2),
            &FiniteSemigroup::left_zero(3),
        )
        .unwrap();
        assert_eq!(f, vec![0, 1]);
    }

    #[test]
    fn semilattice_into_square_of_chain() {
        let c = FiniteSemigroup::chain2();
        let cc = FiniteSemigroup::direct_product(&c, &c).unwrap();
        let t = FiniteSemigroup::semilattice3();
        let f = embeds_into(&t, &cc).unwrap();
        assert!(is_embedding(&t, &cc, &f));
        // (0,0), (0,1), (1,0)
        assert_eq!(f, vec![0, 1, 2]);
    }

    #[test]
    fn left_zero_not_in_right_zero() {
        assert!(embeds_into(
            &FiniteSemigroup::left_zero(2),
            &FiniteSemigroup::right_zero(2)
        )
        .is_none());
        assert!(embeds_into(
            &FiniteSemigroup::left_zero(3),
            &FiniteSemigroup::left_zero(2)
        )
        .is_none());
    }
}
