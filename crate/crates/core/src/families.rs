//! Named families of small groups and direct products.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroup};

/// A named group family. Dihedral and quaternion groups are indexed by their
/// total order (`Dihedral(8)` has eight elements).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Cyclic(usize),
    Dihedral(usize),
    Quaternion(usize),
    Symmetric(usize),
    Alternating(usize),
    ElementaryAbelian { p: usize, k: usize },
}

impl Family {
    /// Order of the group, or an error for unsupported parameters.
    pub fn order(&self) -> Result<usize> {
        let unsupported = |msg: String| Err(Error::InvalidSpec(msg));
        match *self {
            Family::Cyclic(n) if n >= 1 => Ok(n),
            Family::Cyclic(n) => unsupported(format!("C{n}: order must be positive")),
            Family::Dihedral(n) if n >= 4 && n % 2 == 0 => Ok(n),
            Family::Dihedral(n) => unsupported(format!(
                "D{n}: dihedral groups are named by their even order ≥ 4"
            )),
            Family::Quaternion(n) if n == 8 || n == 16 => Ok(n),
            Family::Quaternion(n) => unsupported(format!("Q{n}: only Q8 and Q16 are supported")),
            Family::Symmetric(m) if (1..=5).contains(&m) => Ok(factorial(m)),
            Family::Symmetric(m) => unsupported(format!("S{m}: degree must be in 1..=5")),
            Family::Alternating(m) if (1..=5).contains(&m) => Ok((factorial(m) / 2).max(1)),
            Family::Alternating(m) => unsupported(format!("A{m}: degree must be in 1..=5")),
            Family::ElementaryAbelian { p, k } if is_prime(p) && k >= 1 => p
                .checked_pow(k as u32)
                .ok_or_else(|| Error::InvalidSpec(format!("E{p}^{k} is too large"))),
            Family::ElementaryAbelian { p, k } => {
                unsupported(format!("E{p}^{k}: need a prime base and positive rank"))
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Cyclic(n) => write!(f, "C{n}"),
            Family::Dihedral(n) => write!(f, "D{n}"),
            Family::Quaternion(n) => write!(f, "Q{n}"),
            Family::Symmetric(m) => write!(f, "S{m}"),
            Family::Alternating(m) => write!(f, "A{m}"),
            Family::ElementaryAbelian { p, k } => write!(f, "E{p}^{k}"),
        }
    }
}

/// Builds the named group, refusing orders above `max_order`.
pub fn build_named(family: &Family, max_order: usize) -> Result<FiniteGroup> {
    let order = family.order()?;
    if order > max_order {
        return Err(Error::Limit(format!(
            "{family} has order {order}, above the configured maximum {max_order}"
        )));
    }
    let name = family.to_string();
    match *family {
        Family::Cyclic(n) => {
            let labels = if n > 1 {
                labels_of(&[("a", 1)])
            } else {
                BTreeMap::new()
            };
            FiniteGroup::from_fn(name, n, labels, |x, y| (x + y) % n)
        }
        Family::Dihedral(n) => {
            // a^i b^j ↦ i + m·j, with b a = a⁻¹ b.
            let m = n / 2;
            let labels = labels_of(&[("a", 1), ("b", m)]);
            FiniteGroup::from_fn(name, n, labels, |x, y| {
                let (i, j) = (x % m, x / m);
                let (k, l) = (y % m, y / m);
                let r = if j == 0 { (i + k) % m } else { (i + m - k) % m };
                r + m * ((j + l) % 2)
            })
        }
        Family::Quaternion(n) => {
            // a^i b^j with a of order 2m, b² = a^m, b a b⁻¹ = a⁻¹.
            let m2 = n / 2;
            let m = m2 / 2;
            let labels = labels_of(&[("a", 1), ("b", m2)]);
            FiniteGroup::from_fn(name, n, labels, |x, y| {
                let (i, j) = (x % m2, x / m2);
                let (k, l) = (y % m2, y / m2);
                match (j, l) {
                    (0, _) => (i + k) % m2 + m2 * l,
                    (_, 0) => (i + m2 - k) % m2 + m2,
                    _ => (i + m2 - k + m) % m2,
                }
            })
        }
        Family::Symmetric(m) => {
            let mut gens: Vec<(String, Vec<usize>)> = Vec::new();
            if m >= 2 {
                gens.push(("a".into(), cycle(m, &(0..m).collect::<Vec<_>>())));
                gens.push(("b".into(), cycle(m, &[0, 1])));
                for i in 0..m - 1 {
                    gens.push((format!("s{}", i + 1), cycle(m, &[i, i + 1])));
                }
            }
            permutation_group(name, m, false, &gens)
        }
        Family::Alternating(m) => {
            let mut gens: Vec<(String, Vec<usize>)> = Vec::new();
            if m >= 3 {
                gens.push(("a".into(), cycle(m, &[0, 1, 2])));
            }
            if m >= 4 {
                let b: Vec<usize> = if m % 2 == 1 {
                    (0..m).collect()
                } else {
                    (1..m).collect()
                };
                gens.push(("b".into(), cycle(m, &b)));
            }
            permutation_group(name, m, true, &gens)
        }
        Family::ElementaryAbelian { p, k } => {
            let labels = (0..k)
                .map(|i| (generator_letter(i), p.pow(i as u32)))
                .collect();
            FiniteGroup::from_fn(name, order, labels, |x, y| {
                let (mut x, mut y, mut out, mut place) = (x, y, 0, 1);
                for _ in 0..k {
                    out += ((x % p + y % p) % p) * place;
                    x /= p;
                    y /= p;
                    place *= p;
                }
                out
            })
        }
    }
}

/// `G × K` with `(g, k) ↦ g·|K| + k`. Generator labels get the 1-based
/// factor position appended, with nested products flattened left to right.
pub fn direct_product(g: &FiniteGroup, k: &FiniteGroup, max_order: usize) -> Result<FiniteGroup> {
    let order = g
        .order()
        .checked_mul(k.order())
        .filter(|&o| o <= max_order)
        .ok_or_else(|| {
            Error::Limit(format!(
                "{}x{} has order above the configured maximum {max_order}",
                g.name(),
                k.name()
            ))
        })?;
    let ko = k.order();
    let g_factors = factor_count(g);
    let mut labels = BTreeMap::new();
    for (l, &x) in g.labels() {
        let l = if g_factors == 1 {
            format!("{l}1")
        } else {
            l.clone()
        };
        labels.insert(l, x * ko);
    }
    for (l, &x) in k.labels() {
        labels.insert(format!("{l}{}", g_factors + 1), x);
    }
    FiniteGroup::from_fn(
        format!("{}x{}", g.name(), k.name()),
        order,
        labels,
        |x, y| g.mul(x / ko, y / ko) * ko + k.mul(x % ko, y % ko),
    )
}

fn factor_count(g: &FiniteGroup) -> usize {
    g.name().split('x').count()
}

fn labels_of(pairs: &[(&str, Element)]) -> BTreeMap<String, Element> {
    pairs.iter().map(|&(l, x)| (l.to_string(), x)).collect()
}

fn generator_letter(i: usize) -> String {
    ((b'a' + i as u8) as char).to_string()
}

fn factorial(m: usize) -> usize {
    (1..=m).product()
}

fn is_prime(p: usize) -> bool {
    p >= 2
        && (2..p)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// Permutation of `0..m` sending `pts[i]` to `pts[i+1]` cyclically.
fn cycle(m: usize, pts: &[usize]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..m).collect();
    for (i, &x) in pts.iter().enumerate() {
        p[x] = pts[(i + 1) % pts.len()];
    }
    p
}

fn is_even(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

/// All (or all even) permutations of `0..m` in lexicographic order; the
/// identity comes first. Product is composition `(x·y)(i) = x(y(i))`.
fn permutation_group(
    name: String,
    m: usize,
    even_only: bool,
    gens: &[(String, Vec<usize>)],
) -> Result<FiniteGroup> {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut cur: Vec<usize> = (0..m).collect();
    loop {
        if !even_only || is_even(&cur) {
            perms.push(cur.clone());
        }
        if !next_permutation(&mut cur) {
            break;
        }
    }
    let index: HashMap<Vec<usize>, usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let labels = gens.iter().map(|(l, p)| (l.clone(), index[p])).collect();
    FiniteGroup::from_fn(name, perms.len(), labels, |x, y| {
        let composed: Vec<usize> = (0..m).map(|i| perms[x][perms[y][i]]).collect();
        index[&composed]
    })
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len())
        .rev()
        .find(|&j| v[j] > v[i])
        .expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(f: Family) -> FiniteGroup {
        build_named(&f, 128).unwrap()
    }

    #[test]
    fn family_orders() {
        for (f, n) in [
            (Family::Cyclic(1), 1),
            (Family::Cyclic(12), 12),
            (Family::Dihedral(8), 8),
            (Family::Dihedral(16), 16),
            (Family::Quaternion(8), 8),
            (Family::Quaternion(16), 16),
            (Family::Symmetric(3), 6),
            (Family::Symmetric(4), 24),
            (Family::Alternating(4), 12),
            (Family::Alternating(5), 60),
            (Family::ElementaryAbelian { p: 2, k: 3 }, 8),
        ] {
            assert_eq!(build(f).order(), n, "{f}");
        }
    }

    #[test]
    fn dihedral_eight_matches_presentation() {
        let g = build(Family::Dihedral(8));
        let (a, b) = (g.label("a").unwrap(), g.label("b").unwrap());
        assert_eq!(g.element_order(a), 4);
        assert_eq!(g.element_order(b), 2);
        assert_eq!(g.mul(b, a), g.mul(g.inv(a), b));
        assert!(!g.is_abelian());
    }

    #[test]
    fn quaternion_relations() {
        for n in [8, 16] {
            let g = build(Family::Quaternion(n));
            let (a, b) = (g.label("a").unwrap(), g.label("b").unwrap());
            assert_eq!(g.element_order(a), n / 2);
            assert_eq!(g.mul(b, b), g.pow(a, (n / 4) as i64));
            assert_eq!(g.conjugate(b, a), g.inv(a));
            // unique involution
            let involutions = g.elements().filter(|&x| g.element_order(x) == 2).count();
            assert_eq!(involutions, 1);
        }
    }

    #[test]
    fn trivial_and_symmetric_centers() {
        assert_eq!(build(Family::Cyclic(1)).order(), 1);
        let s3 = build(Family::Symmetric(3));
        assert_eq!(s3.center().order(), 1);
        assert_eq!(s3.label("s1"), s3.label("b"));
    }

    #[test]
    fn alternating_generators_generate() {
        for m in 3..=5 {
            let g = build(Family::Alternating(m));
            let gens: Vec<_> = g.labels().values().copied().collect();
            assert_eq!(g.subgroup_generated(&gens).order(), g.order());
        }
    }

    #[test]
    fn unsupported_parameters() {
        for f in [
            Family::Dihedral(9),
            Family::Dihedral(2),
            Family::Quaternion(12),
            Family::Symmetric(6),
            Family::Cyclic(0),
            Family::ElementaryAbelian { p: 4, k: 2 },
        ] {
            assert!(
                matches!(build_named(&f, 128), Err(Error::InvalidSpec(_))),
                "{f}"
            );
        }
        assert!(matches!(
            build_named(&Family::Cyclic(20), 16),
            Err(Error::Limit(_))
        ));
    }

    #[test]
    fn products() {
        let c2 = build(Family::Cyclic(2));
        let c4 = build(Family::Cyclic(4));
        let s3 = build(Family::Symmetric(3));
        let v = direct_product(&c2, &c2, 64).unwrap();
        assert_eq!((v.order(), v.exponent()), (4, 2));
        let c2c4 = direct_product(&c2, &c4, 64).unwrap();
        assert_eq!(c2c4.order(), 8);
        assert!(c2c4.is_abelian());
        assert_eq!(c2c4.labels().keys().collect::<Vec<_>>(), ["a1", "a2"]);
        let s3c2 = direct_product(&s3, &c2, 64).unwrap();
        assert_eq!(s3c2.order(), 12);
        assert_eq!(s3c2.center().order(), 2);
        let triple = direct_product(&v, &c2, 64).unwrap();
        assert_eq!(
            triple.labels().keys().collect::<Vec<_>>(),
            ["a1", "a2", "a3"]
        );
        assert!(matches!(direct_product(&c4, &c4, 8), Err(Error::Limit(_))));
    }
}
