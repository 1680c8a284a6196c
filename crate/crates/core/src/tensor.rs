//! The nonabelian tensor square `G ⊗ G`, realized by coset enumeration of
//! its defining presentation, and the structures read off it: tensor
//! centralizers, the tensor center, `J₂(G) = ker κ` and the tensor upper
//! central series.

use crate::coset::{todd_coxeter, Letter, Presentation};
use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroup, Subgroup};

/// Largest group whose tensor-square presentation will be built.
pub const MAX_TENSOR_GROUP_ORDER: usize = 64;

/// Cross-check depth for the direct definition of `Zₙ⊗(G)`.
const DIRECT_CHECK_DEPTH: usize = 3;

/// Presentation of `G ⊗ G` on one generator per ordered pair `(g, n)`
/// (generator index `g·|G| + n`), with relators
/// `(gg′⊗n)⁻¹ (ᵍg′⊗ᵍn) (g⊗n)` and `(g⊗nn′)⁻¹ (g⊗n) (ⁿg⊗ⁿn′)` for every triple.
pub fn tensor_square_presentation(g: &FiniteGroup) -> Result<Presentation> {
    let n = g.order();
    if n > MAX_TENSOR_GROUP_ORDER {
        return Err(Error::Limit(format!(
            "tensor square presentation of {} (order {n}) exceeds order bound {MAX_TENSOR_GROUP_ORDER}",
            g.name()
        )));
    }
    let pair = |x: Element, y: Element| x * n + y;
    let mut relators = Vec::with_capacity(2 * n * n * n);
    for a in g.elements() {
        for b in g.elements() {
            for c in g.elements() {
                relators.push(vec![
                    Letter::inv(pair(g.mul(a, b), c)),
                    Letter::gen(pair(g.conjugate(a, b), g.conjugate(a, c))),
                    Letter::gen(pair(a, c)),
                ]);
            }
        }
    }
    for a in g.elements() {
        for b in g.elements() {
            for c in g.elements() {
                relators.push(vec![
                    Letter::inv(pair(a, g.mul(b, c))),
                    Letter::gen(pair(a, b)),
                    Letter::gen(pair(g.conjugate(b, a), g.conjugate(b, c))),
                ]);
            }
        }
    }
    Presentation::new(n * n, relators)
}

/// `G ⊗ G` for a fixed `G`: its order and, for each pair `(x, y)`, the
/// element of the realized tensor square represented by `x ⊗ y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSquare {
    group_name: String,
    group_order: usize,
    order: usize,
    element_of_pair: Vec<u32>,
    centralizer_sizes: Vec<usize>,
}

impl TensorSquare {
    /// Enumerates `G ⊗ G`. Hitting `max_cosets` is a limit error naming the
    /// group.
    pub fn compute(g: &FiniteGroup, max_cosets: usize) -> Result<Self> {
        let presentation = tensor_square_presentation(g)?;
        let table = todd_coxeter(&presentation, max_cosets)?;
        if !table.is_complete() {
            return Err(Error::Limit(format!(
                "tensor square of {} exceeded {max_cosets} cosets",
                g.name()
            )));
        }
        let n = g.order();
        let element_of_pair = (0..n * n)
            .map(|gen| table.generator_element(gen).map(|e| e as u32))
            .collect::<Result<Vec<_>>>()?;
        let centralizer_sizes = (0..n)
            .map(|x| (0..n).filter(|&a| element_of_pair[a * n + x] == 0).count())
            .collect();
        Ok(TensorSquare {
            group_name: g.name().to_string(),
            group_order: n,
            order: table.coset_count(),
            element_of_pair,
            centralizer_sizes,
        })
    }

    /// `|G ⊗ G|`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    /// Element of `G ⊗ G` (0 = identity) represented by `x ⊗ y`.
    #[inline]
    pub fn element_of_pair(&self, x: Element, y: Element) -> usize {
        self.element_of_pair[x * self.group_order + y] as usize
    }

    /// `x ⊗ y = 1`.
    #[inline]
    pub fn is_trivial(&self, x: Element, y: Element) -> bool {
        self.element_of_pair[x * self.group_order + y] == 0
    }

    /// `|C⊗(x)|`.
    pub fn centralizer_size(&self, x: Element) -> usize {
        self.centralizer_sizes[x]
    }

    fn check_group(&self, g: &FiniteGroup) -> Result<()> {
        if g.order() != self.group_order {
            return Err(Error::InvalidArgument(format!(
                "tensor square of {} used with {}",
                self.group_name,
                g.name()
            )));
        }
        Ok(())
    }

    /// `C⊗(x) = {a : a ⊗ x = 1}`. A result that is not a subgroup indicates
    /// a broken enumeration and is reported as an internal error.
    pub fn tensor_centralizer(&self, g: &FiniteGroup, x: Element) -> Result<Subgroup> {
        self.check_group(g)?;
        let elements = g.elements().filter(|&a| self.is_trivial(a, x)).collect();
        Subgroup::new(g, elements).map_err(|e| {
            Error::Internal(format!(
                "tensor centralizer of {x} in {} is not a subgroup: {e}",
                g.name()
            ))
        })
    }

    /// `Z⊗(G)`, the intersection of all tensor centralizers.
    pub fn tensor_center(&self, g: &FiniteGroup) -> Result<Subgroup> {
        self.check_group(g)?;
        let elements = g
            .elements()
            .filter(|&a| g.elements().all(|x| self.is_trivial(a, x)))
            .collect();
        Subgroup::new(g, elements).map_err(|e| {
            Error::Internal(format!(
                "tensor center of {} is not a subgroup: {e}",
                g.name()
            ))
        })
    }

    /// `|J₂(G)| = |G ⊗ G| / |G′|`.
    pub fn j2_order(&self, g: &FiniteGroup) -> Result<usize> {
        self.check_group(g)?;
        let derived = g.derived_subgroup().order();
        if !self.order.is_multiple_of(derived) {
            return Err(Error::Internal(format!(
                "|{} ⊗ {}| = {} is not divisible by |G′| = {derived}",
                g.name(),
                g.name(),
                self.order
            )));
        }
        Ok(self.order / derived)
    }

    /// `Zₙ⊗(G)` for `n ≥ 1`, as the preimage of `Zₙ₋₁(G/Z⊗(G))`. For
    /// `n ≤ 3` the direct definition is evaluated as well and any
    /// disagreement is an internal error carrying a witness.
    pub fn tensor_upper_central(&self, g: &FiniteGroup, n: usize) -> Result<Subgroup> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "tensor upper central series starts at n = 1".into(),
            ));
        }
        let series = self.tensor_upper_central_series(g)?;
        let pulled = series[(n - 1).min(series.len() - 1)].clone();
        if n <= DIRECT_CHECK_DEPTH {
            self.cross_check(g, n, &pulled)?;
        }
        Ok(pulled)
    }

    /// `Z₁⊗(G) ≤ Z₂⊗(G) ≤ …` up to the first repeated term.
    pub fn tensor_upper_central_series(&self, g: &FiniteGroup) -> Result<Vec<Subgroup>> {
        let z = self.tensor_center(g)?;
        let (q, proj) = g.quotient(&z).map_err(|e| {
            Error::Internal(format!("tensor center of {} is not normal: {e}", g.name()))
        })?;
        Ok(q.upper_central_series()
            .iter()
            .map(|s| Subgroup::preimage(&proj, s))
            .collect())
    }

    fn cross_check(&self, g: &FiniteGroup, n: usize, pulled: &Subgroup) -> Result<()> {
        let direct = self.direct_upper_central(g, n);
        for a in g.elements() {
            if pulled.contains(a) != direct.contains(a) {
                return Err(Error::Internal(format!(
                    "Z_{n}⊗({}) disagrees with its direct definition at element {a} \
                     (pullback: {}, direct: {})",
                    g.name(),
                    pulled.contains(a),
                    direct.contains(a)
                )));
            }
        }
        Ok(())
    }

    /// `{a : [a, x₁, …, xₙ₋₁] ⊗ xₙ = 1 for all xᵢ}` by exhaustive tuples.
    fn direct_upper_central(&self, g: &FiniteGroup, n: usize) -> Subgroup {
        let order = g.order();
        let mut elements = Vec::new();
        'outer: for a in g.elements() {
            let mut xs = vec![0; n - 1];
            loop {
                let mut c = a;
                for &x in &xs {
                    c = g.commutator(c, x);
                }
                if !g.elements().all(|y| self.is_trivial(c, y)) {
                    continue 'outer;
                }
                if !advance(&mut xs, order) {
                    break;
                }
            }
            elements.push(a);
        }
        Subgroup::new(g, elements).expect("direct tensor upper central term is a subgroup")
    }

    /// Smallest `c ≥ 0` with `Z_c⊗(G) = G` (`Z₀⊗ = 1`), or `None` when the
    /// series stops below `G`.
    pub fn tensor_class(&self, g: &FiniteGroup) -> Result<Option<usize>> {
        if g.order() == 1 {
            return Ok(Some(0));
        }
        let series = self.tensor_upper_central_series(g)?;
        Ok(series
            .iter()
            .position(|s| s.order() == g.order())
            .map(|i| i + 1))
    }

    /// Structural checks that any correct tensor square must pass:
    /// symmetry of triviality, `x ⊗ y = 1 ⇒ [x, y] = 1`, `Z⊗ ≤ Z`,
    /// `|G′|` dividing `|G ⊗ G|`, closure of every tensor centralizer, and
    /// agreement of the tensor upper central series with its direct
    /// definition.
    pub fn check_invariants(&self, g: &FiniteGroup) -> Result<()> {
        self.check_group(g)?;
        for x in g.elements() {
            if !self.is_trivial(0, x) || !self.is_trivial(x, 0) {
                return Err(Error::Internal(format!(
                    "1 ⊗ {x} or {x} ⊗ 1 is nontrivial in {}",
                    g.name()
                )));
            }
            for y in g.elements() {
                if self.is_trivial(x, y) != self.is_trivial(y, x) {
                    return Err(Error::Internal(format!(
                        "triviality of {x} ⊗ {y} is not symmetric in {}",
                        g.name()
                    )));
                }
                if self.is_trivial(x, y) && g.commutator(x, y) != 0 {
                    return Err(Error::Internal(format!(
                        "{x} ⊗ {y} = 1 but [{x}, {y}] ≠ 1 in {}",
                        g.name()
                    )));
                }
            }
            self.tensor_centralizer(g, x)?;
        }
        let z = self.tensor_center(g)?;
        if !z.is_subset_of(&g.center()) {
            return Err(Error::Internal(format!(
                "Z⊗({0}) is not contained in Z({0})",
                g.name()
            )));
        }
        self.j2_order(g)?;
        let series = self.tensor_upper_central_series(g)?;
        for w in series.windows(2) {
            if !w[0].is_subset_of(&w[1]) {
                return Err(Error::Internal(format!(
                    "tensor upper central series of {} is not ascending",
                    g.name()
                )));
            }
        }
        for n in 1..=DIRECT_CHECK_DEPTH {
            self.tensor_upper_central(g, n)?;
        }
        Ok(())
    }
}

/// Odometer step over `0..base` digits; false once all tuples are visited.
pub(crate) fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}
