//! Finitely presented groups and Todd–Coxeter coset enumeration over the
//! trivial subgroup (HLT strategy with a coincidence queue).

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Default cap on the number of simultaneously live cosets.
pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

const UNDEF: u32 = u32::MAX;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn gen(generator: usize) -> Self {
        Letter {
            generator: generator as u32,
            inverse: false,
        }
    }

    pub fn inv(generator: usize) -> Self {
        Letter {
            generator: generator as u32,
            inverse: true,
        }
    }

    pub fn inverted(self) -> Self {
        Letter {
            inverse: !self.inverse,
            ..self
        }
    }

    /// Column of the coset table: `2·gen` for the generator, `2·gen + 1` for
    /// its inverse.
    #[inline]
    fn column(self) -> usize {
        2 * self.generator as usize + self.inverse as usize
    }
}

/// Generators `0..generator_count` and relators as words in [`Letter`]s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generator_count: usize,
    relators: Vec<Vec<Letter>>,
}

impl Presentation {
    pub fn new(generator_count: usize, relators: Vec<Vec<Letter>>) -> Result<Self> {
        if generator_count == 0 {
            return Err(Error::InvalidArgument(
                "presentation needs at least one generator".into(),
            ));
        }
        if generator_count >= (u32::MAX / 2) as usize {
            return Err(Error::Limit(format!("{generator_count} generators")));
        }
        for (i, r) in relators.iter().enumerate() {
            if r.is_empty() {
                return Err(Error::InvalidArgument(format!("relator {i} is empty")));
            }
            if let Some(l) = r.iter().find(|l| l.generator as usize >= generator_count) {
                return Err(Error::InvalidArgument(format!(
                    "relator {i} uses generator {} of {generator_count}",
                    l.generator
                )));
            }
        }
        Ok(Self {
            generator_count,
            relators,
        })
    }

    /// Parses relators written as signed 1-based integers, `-k` standing for
    /// the inverse of generator `k-1`.
    pub fn from_signed(generator_count: usize, relators: &[&[i64]]) -> Result<Self> {
        let relators = relators
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&s| match s {
                        0 => Err(Error::InvalidArgument("0 is not a signed generator".into())),
                        s if s > 0 => Ok(Letter::gen(s as usize - 1)),
                        s => Ok(Letter::inv((-s) as usize - 1)),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(generator_count, relators)
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Vec<Letter>] {
        &self.relators
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationStatus {
    Completed,
    ExceededLimit,
}

/// Result of an enumeration. A completed table is the regular
/// representation of the presented group: coset `0` is the identity and
/// cosets are numbered in order of definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    generator_count: usize,
    rows: Vec<u32>,
    coset_count: usize,
    status: EnumerationStatus,
}

impl CosetTable {
    pub fn status(&self) -> EnumerationStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == EnumerationStatus::Completed
    }

    /// Number of live cosets; the group order when complete.
    pub fn coset_count(&self) -> usize {
        self.coset_count
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    /// `coset · letter`, if defined.
    pub fn act(&self, coset: usize, letter: Letter) -> Option<usize> {
        let v = self.rows[coset * 2 * self.generator_count + letter.column()];
        (v != UNDEF).then_some(v as usize)
    }

    /// Image of coset 0 under `gen`, i.e. the element of the presented group
    /// represented by that generator. Zero means the generator is trivial.
    pub fn generator_element(&self, gen: usize) -> Result<usize> {
        if !self.is_complete() {
            return Err(Error::IncompleteTable);
        }
        if gen >= self.generator_count {
            return Err(Error::InvalidArgument(format!(
                "generator {gen} out of range"
            )));
        }
        Ok(self.act(0, Letter::gen(gen)).expect("complete table"))
    }

    /// Text matrix: one line per coset, one column per generator.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for c in 0..self.coset_count {
            let cells: Vec<String> = (0..self.generator_count)
                .map(|g| match self.act(c, Letter::gen(g)) {
                    Some(v) => v.to_string(),
                    None => "-".into(),
                })
                .collect();
            let _ = writeln!(out, "{c}: {}", cells.join(" "));
        }
        out
    }

    /// Checks that every generator permutes the cosets and every relator
    /// fixes every coset.
    pub fn verify(&self, presentation: &Presentation) -> Result<()> {
        if !self.is_complete() {
            return Err(Error::IncompleteTable);
        }
        let n = self.coset_count;
        for g in 0..self.generator_count {
            let mut hit = vec![false; n];
            for c in 0..n {
                let d = self.act(c, Letter::gen(g)).ok_or_else(|| {
                    Error::Internal(format!("coset {c} has no image under generator {g}"))
                })?;
                if hit[d] || self.act(d, Letter::inv(g)) != Some(c) {
                    return Err(Error::Internal(format!(
                        "generator {g} does not act as a permutation at coset {c}"
                    )));
                }
                hit[d] = true;
            }
        }
        for (i, r) in presentation.relators().iter().enumerate() {
            for c in 0..n {
                let end = r
                    .iter()
                    .fold(c, |x, &l| self.act(x, l).expect("complete table"));
                if end != c {
                    return Err(Error::Internal(format!(
                        "relator {i} does not fix coset {c}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Working state of an HLT enumeration.
struct Enumerator<'p> {
    relators: &'p [Vec<Letter>],
    width: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<u32>,
    live: usize,
    max_cosets: usize,
}

/// Signals that the live-coset limit was hit.
struct LimitHit;

impl<'p> Enumerator<'p> {
    fn new(p: &'p Presentation, max_cosets: usize) -> Self {
        let width = 2 * p.generator_count;
        Enumerator {
            relators: &p.relators,
            width,
            table: vec![UNDEF; width],
            parent: vec![0],
            queue: Vec::new(),
            live: 1,
            max_cosets,
        }
    }

    #[inline]
    fn allocated(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, coset: usize, col: usize) -> u32 {
        self.table[coset * self.width + col]
    }

    #[inline]
    fn set(&mut self, coset: usize, col: usize, v: u32) {
        self.table[coset * self.width + col] = v;
    }

    #[inline]
    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn define(&mut self, coset: usize, col: usize) -> std::result::Result<usize, LimitHit> {
        if self.live >= self.max_cosets {
            return Err(LimitHit);
        }
        let new = self.allocated();
        if new >= UNDEF as usize {
            return Err(LimitHit);
        }
        self.parent.push(new as u32);
        self.table.resize(self.table.len() + self.width, UNDEF);
        self.live += 1;
        self.set(coset, col, new as u32);
        self.set(new, col ^ 1, coset as u32);
        Ok(new)
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut x = c;
        while self.parent[x] as usize != r {
            let next = self.parent[x] as usize;
            self.parent[x] = r as u32;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra == rb {
            return;
        }
        let (keep, kill) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[kill] = keep as u32;
        self.live -= 1;
        self.queue.push(kill as u32);
    }

    /// Identify cosets `a` and `b` and process every consequence.
    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i] as usize;
            i += 1;
            for col in 0..self.width {
                let target = self.get(dead, col);
                if target == UNDEF {
                    continue;
                }
                let target = target as usize;
                // Drop the back pointer into the dead row.
                if self.get(target, col ^ 1) as usize == dead {
                    self.set(target, col ^ 1, UNDEF);
                }
                let mu = self.rep(dead);
                let nu = self.rep(target);
                let forward = self.get(mu, col);
                if forward != UNDEF {
                    self.merge(nu, forward as usize);
                } else {
                    let back = self.get(nu, col ^ 1);
                    if back != UNDEF {
                        self.merge(mu, back as usize);
                    } else {
                        self.set(mu, col, nu as u32);
                        self.set(nu, col ^ 1, mu as u32);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, start: usize, rel: usize) -> std::result::Result<(), LimitHit> {
        let word = &self.relators[rel];
        let len = word.len();
        let mut f = start;
        let mut b = start;
        let mut i = 0usize;
        let mut j = len;
        loop {
            while i < j {
                let next = self.get(f, word[i].column());
                if next == UNDEF {
                    break;
                }
                f = next as usize;
                i += 1;
            }
            if i == j {
                if f != start {
                    self.coincidence(f, start);
                }
                return Ok(());
            }
            while j > i {
                let prev = self.get(b, word[j - 1].column() ^ 1);
                if prev == UNDEF {
                    break;
                }
                b = prev as usize;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                let col = word[i].column();
                self.set(f, col, b as u32);
                self.set(b, col ^ 1, f as u32);
                return Ok(());
            }
            self.define(f, word[i].column())?;
        }
    }

    fn run(&mut self) -> std::result::Result<(), LimitHit> {
        let mut alpha = 0;
        while alpha < self.allocated() {
            if self.is_live(alpha) {
                for rel in 0..self.relators.len() {
                    self.scan_and_fill(alpha, rel)?;
                    if !self.is_live(alpha) {
                        break;
                    }
                }
                let mut col = 0;
                while col < self.width && self.is_live(alpha) {
                    if self.get(alpha, col) == UNDEF {
                        self.define(alpha, col)?;
                    }
                    col += 1;
                }
            }
            alpha += 1;
        }
        Ok(())
    }

    /// Renumbers live cosets `0..live` in order of definition.
    fn compact(self, generator_count: usize, status: EnumerationStatus) -> CosetTable {
        let n = self.allocated();
        let mut new_index = vec![UNDEF; n];
        let mut count = 0u32;
        for (c, slot) in new_index.iter_mut().enumerate() {
            if self.is_live(c) {
                *slot = count;
                count += 1;
            }
        }
        let mut rows = Vec::with_capacity(count as usize * self.width);
        for c in 0..n {
            if !self.is_live(c) {
                continue;
            }
            for col in 0..self.width {
                let v = self.get(c, col);
                rows.push(if v == UNDEF {
                    UNDEF
                } else {
                    new_index[v as usize]
                });
            }
        }
        CosetTable {
            generator_count,
            rows,
            coset_count: count as usize,
            status,
        }
    }
}

/// Enumerates the cosets of the trivial subgroup of the presented group.
///
/// Cosets are processed in order of definition; at each live coset every
/// relator is scanned (defining cosets to close gaps), then any empty entry
/// in its row is filled. Coincidences are merged through a union-find with
/// a FIFO queue. If more than `max_cosets` cosets would be live at once the
/// enumeration stops with [`EnumerationStatus::ExceededLimit`].
pub fn todd_coxeter(presentation: &Presentation, max_cosets: usize) -> Result<CosetTable> {
    if max_cosets == 0 {
        return Err(Error::InvalidArgument(
            "max_cosets must be at least 1".into(),
        ));
    }
    let mut e = Enumerator::new(presentation, max_cosets);
    let status = match e.run() {
        Ok(()) => EnumerationStatus::Completed,
        Err(LimitHit) => EnumerationStatus::ExceededLimit,
    };
    let table = e.compact(presentation.generator_count, status);
    if table.is_complete() {
        table.verify(presentation)?;
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_four() {
        let p = Presentation::from_signed(1, &[&[1, 1, 1, 1]]).unwrap();
        let t = todd_coxeter(&p, 100).unwrap();
        assert!(t.is_complete());
        assert_eq!(t.coset_count(), 4);
        assert_ne!(t.generator_element(0).unwrap(), 0);
    }

    #[test]
    fn standard_presentations() {
        // D8 = <a, b | a^4, b^2, b a b^-1 a>
        let d8 = Presentation::from_signed(2, &[&[1, 1, 1, 1], &[2, 2], &[2, 1, -2, 1]]).unwrap();
        assert_eq!(todd_coxeter(&d8, 1000).unwrap().coset_count(), 8);
        // Q8 = <a, b | a^4, b^2 a^-2, b a b^-1 a>
        let q8 = Presentation::from_signed(2, &[&[1, 1, 1, 1], &[2, 2, -1, -1], &[2, 1, -2, 1]])
            .unwrap();
        assert_eq!(todd_coxeter(&q8, 1000).unwrap().coset_count(), 8);
        // S3 = <a, b | a^3, b^2, (ab)^2>
        let s3 = Presentation::from_signed(2, &[&[1, 1, 1], &[2, 2], &[1, 2, 1, 2]]).unwrap();
        assert_eq!(todd_coxeter(&s3, 1000).unwrap().coset_count(), 6);
    }

    #[test]
    fn trivial_generator_maps_to_zero() {
        let p = Presentation::from_signed(2, &[&[1], &[2, 2, 2]]).unwrap();
        let t = todd_coxeter(&p, 100).unwrap();
        assert_eq!(t.coset_count(), 3);
        assert_eq!(t.generator_element(0).unwrap(), 0);
        assert_ne!(t.generator_element(1).unwrap(), 0);
    }

    #[test]
    fn limit_is_reported() {
        let p = Presentation::from_signed(1, &[&[1; 50]]).unwrap();
        let t = todd_coxeter(&p, 10).unwrap();
        assert_eq!(t.status(), EnumerationStatus::ExceededLimit);
        assert!(matches!(
            t.generator_element(0),
            Err(Error::IncompleteTable)
        ));
    }

    #[test]
    fn malformed_presentations() {
        assert!(Presentation::from_signed(1, &[&[]]).is_err());
        assert!(Presentation::from_signed(1, &[&[2]]).is_err());
        assert!(Presentation::from_signed(1, &[&[0]]).is_err());
        let p = Presentation::from_signed(1, &[&[1]]).unwrap();
        assert!(todd_coxeter(&p, 0).is_err());
    }

    #[test]
    fn deterministic() {
        let p = Presentation::from_signed(2, &[&[1, 1, 1], &[2, 2], &[1, 2, 1, 2]]).unwrap();
        assert_eq!(
            todd_coxeter(&p, 1000).unwrap(),
            todd_coxeter(&p, 1000).unwrap()
        );
    }

    #[test]
    fn dump_has_one_line_per_coset() {
        let p = Presentation::from_signed(1, &[&[1, 1, 1]]).unwrap();
        let t = todd_coxeter(&p, 10).unwrap();
        assert_eq!(t.dump().lines().count(), 3);
    }
}
