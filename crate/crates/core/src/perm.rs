//! Permutations and permutation groups given by a base and strong generating set.
//!
//! A permutation is stored by its images: point `i` goes to `images[i]`.
//! Products are read left to right: `p.then(q)` applies `p` first.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("not a bijection on 0..{0}")]
    NotBijective(usize),
    #[error("degree mismatch: group acts on {expected} points, permutation on {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("permutation is not a member of the group")]
    NotMember,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self { images: (0..degree).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(PermError::NotBijective(n));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                if a >= degree || b >= degree {
                    return Err(PermError::NotBijective(degree));
                }
                images[a] = b;
            }
        }
        Self::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree());
        Self { images: self.images.iter().map(|&i| other.images[i]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Self { images: inv }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::identity(self.degree());
        for _ in 0..e {
            acc = acc.then(self);
        }
        acc
    }

    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        let mut lcm = 1usize;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            lcm = lcm / gcd(lcm, len) * len;
        }
        lcm
    }

    /// Non-trivial cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    /// Restriction to the first `m` points, which must be mapped among themselves.
    pub fn restrict(&self, m: usize) -> Option<Self> {
        let images = self.images[..m].to_vec();
        Self::from_images(images).ok()
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &j)| i != j)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

/// One letter of a word over the group generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

/// Words are read left to right, like [`Permutation::then`].
pub type Word = Vec<Letter>;

pub fn invert_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| Letter { generator: l.generator, inverse: !l.inverse }).collect()
}

/// Evaluates a word over `gens`.
pub fn evaluate_word(degree: usize, gens: &[Permutation], w: &[Letter]) -> Permutation {
    let mut acc = Permutation::identity(degree);
    for l in w {
        let g = &gens[l.generator];
        acc = if l.inverse { acc.then(&g.inverse()) } else { acc.then(g) };
    }
    acc
}

#[derive(Debug, Clone)]
struct Element {
    perm: Permutation,
    word: Word,
}

impl Element {
    fn then(&self, other: &Element) -> Element {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Element { perm: self.perm.then(&other.perm), word }
    }

    fn inverse(&self) -> Element {
        Element { perm: self.perm.inverse(), word: invert_word(&self.word) }
    }
}

#[derive(Debug, Clone)]
struct Level {
    base_point: usize,
    /// Strong generators fixing all earlier base points.
    strong: Vec<Element>,
    /// `transversal[p]` maps the base point to `p`.
    transversal: Vec<Option<Element>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(degree: usize, base_point: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base_point] =
            Some(Element { perm: Permutation::identity(degree), word: Vec::new() });
        Self { base_point, strong: Vec::new(), transversal, orbit: vec![base_point] }
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        let mut transversal: Vec<Option<Element>> = vec![None; degree];
        transversal[self.base_point] =
            Some(Element { perm: Permutation::identity(degree), word: Vec::new() });
        let mut orbit = vec![self.base_point];
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for s in &self.strong {
                let q = s.perm.apply(p);
                if transversal[q].is_none() {
                    let u = transversal[p].as_ref().expect("orbit point has transversal").then(s);
                    transversal[q] = Some(u);
                    orbit.push(q);
                }
            }
        }
        self.transversal = transversal;
        self.orbit = orbit;
    }
}

/// A permutation group with a stabilizer chain built by deterministic Schreier–Sims.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        Self { degree, generators: Vec::new(), levels: Vec::new() }
    }

    /// Builds the group generated by `generators`. Identity generators are kept
    /// in the generator list (so word indices stay stable) but ignored otherwise.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch { expected: degree, got: g.degree() });
            }
        }
        let mut group = Self { degree, generators, levels: Vec::new() };
        group.build();
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.is_empty()
    }

    fn build(&mut self) {
        let gens: Vec<Element> = self
            .generators
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_identity())
            .map(|(i, g)| Element { perm: g.clone(), word: vec![Letter { generator: i, inverse: false }] })
            .collect();
        for g in gens {
            self.add_generator(g);
        }
    }

    /// Sifts `g` through levels starting at `from`, returning the residue and
    /// the level at which sifting stopped.
    fn sift_element(&self, g: &Element, from: usize) -> (Element, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.perm.apply(level.base_point);
            match &level.transversal[beta] {
                Some(u) => h = h.then(&u.inverse()),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    fn new_base_point(&self, g: &Permutation) -> usize {
        g.first_moved().expect("non-identity permutation moves a point")
    }

    /// Incremental Schreier–Sims: adds a new strong generator and restores the
    /// chain property.
    fn add_generator(&mut self, g: Element) {
        let (residue, j) = self.sift_element(&g, 0);
        if residue.perm.is_identity() {
            return;
        }
        self.insert_at(residue, j);
    }

    fn insert_at(&mut self, h: Element, depth: usize) {
        // h fixes base points before `depth` and is not sifted at `depth`.
        if depth == self.levels.len() {
            let b = self.new_base_point(&h.perm);
            self.levels.push(Level::new(self.degree, b));
        }
        // A strong generator belongs to every level whose earlier base points it fixes.
        for l in 0..=depth {
            self.levels[l].strong.push(h.clone());
        }
        self.complete_from(depth);
    }

    /// Makes the chain valid from `depth` downwards (towards level 0).
    fn complete_from(&mut self, depth: usize) {
        let mut i = depth as isize;
        while i >= 0 {
            let lvl = i as usize;
            self.levels[lvl].rebuild_orbit();
            match self.find_bad_schreier_generator(lvl) {
                Some((residue, j)) => {
                    if j == self.levels.len() {
                        let b = self.new_base_point(&residue.perm);
                        self.levels.push(Level::new(self.degree, b));
                    }
                    for l in (lvl + 1)..=j {
                        self.levels[l].strong.push(residue.clone());
                    }
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
    }

    fn find_bad_schreier_generator(&self, lvl: usize) -> Option<(Element, usize)> {
        let level = &self.levels[lvl];
        for &p in &level.orbit {
            let u = level.transversal[p].as_ref().expect("orbit point");
            for s in &level.strong {
                let q = s.perm.apply(p);
                let uq = level.transversal[q].as_ref().expect("orbit closed");
                let schreier = u.then(s).then(&uq.inverse());
                if schreier.perm.is_identity() {
                    continue;
                }
                let (residue, j) = self.sift_element(&schreier, lvl + 1);
                if !residue.perm.is_identity() {
                    return Some((residue, j));
                }
            }
        }
        None
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.membership(p).is_ok()
    }

    /// A word over [`PermGroup::generators`] evaluating to `p`.
    pub fn membership(&self, p: &Permutation) -> Result<Word, PermError> {
        if p.degree() != self.degree {
            return Err(PermError::DegreeMismatch { expected: self.degree, got: p.degree() });
        }
        let e = Element { perm: p.clone(), word: Vec::new() };
        let mut h = e;
        let mut factors: Vec<&Element> = Vec::new();
        for level in &self.levels {
            let beta = h.perm.apply(level.base_point);
            let u = level.transversal[beta].as_ref().ok_or(PermError::NotMember)?;
            h = Element { perm: h.perm.then(&u.perm.inverse()), word: Vec::new() };
            factors.push(u);
        }
        if !h.perm.is_identity() {
            return Err(PermError::NotMember);
        }
        // p = u_m · … · u_1
        let mut word = Vec::new();
        for u in factors.iter().rev() {
            word.extend_from_slice(&u.word);
        }
        Ok(word)
    }

    /// Orbits of the group on points, each sorted, ordered by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    /// Every element of the group. Only for small groups.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for &p in &level.orbit {
                let u = &level.transversal[p].as_ref().expect("orbit").perm;
                for g in &out {
                    next.push(g.then(u));
                }
            }
            out = next;
        }
        out
    }
}

/// Orbits of the group generated by `gens`.
pub fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(degree);
    for g in gens {
        for i in 0..degree {
            uf.union(i, g.apply(i));
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; degree];
    for i in 0..degree {
        let r = uf.find(i);
        if index[r] == usize::MAX {
            index[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[index[r]].push(i);
    }
    groups
}

/// Disjoint-set forest with path halving; the representative is the smallest element.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    /// Returns true if the sets were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn composition_order() {
        let p = cyc(3, &[&[0, 1]]);
        let q = cyc(3, &[&[1, 2]]);
        // 0 -p-> 1 -q-> 2
        assert_eq!(p.then(&q).apply(0), 2);
        assert_eq!(p.then(&p.inverse()), Permutation::identity(3));
        assert_eq!(cyc(5, &[&[0, 1, 2], &[3, 4]]).order(), 6);
    }

    #[test]
    fn symmetric_group_orders() {
        let s4 = PermGroup::new(4, vec![cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])]).unwrap();
        assert_eq!(s4.order(), BigUint::from(24u32));
        assert_eq!(s4.elements().len(), 24);
        let trivial = PermGroup::new(4, vec![Permutation::identity(4)]).unwrap();
        assert_eq!(trivial.order(), BigUint::one());
        let s7 = PermGroup::new(7, vec![cyc(7, &[&[0, 1]]), cyc(7, &[&[0, 1, 2, 3, 4, 5, 6]])]).unwrap();
        assert_eq!(s7.order(), BigUint::from(5040u32));
    }

    #[test]
    fn dihedral_and_membership_words() {
        let r = cyc(6, &[&[0, 1, 2, 3, 4, 5]]);
        let s = cyc(6, &[&[1, 5], &[2, 4]]);
        let g = PermGroup::new(6, vec![r.clone(), s.clone()]).unwrap();
        assert_eq!(g.order(), BigUint::from(12u32));
        for e in g.elements() {
            let w = g.membership(&e).unwrap();
            assert_eq!(evaluate_word(6, g.generators(), &w), e);
        }
        assert!(g.membership(&cyc(6, &[&[0, 1]])).is_err());
        assert!(g.membership(&Permutation::identity(6)).unwrap().is_empty());
        assert_eq!(g.membership(&r).map(|w| evaluate_word(6, g.generators(), &w)), Ok(r));
    }

    #[test]
    fn orbits_and_cycles() {
        let g = [cyc(6, &[&[0, 2]]), cyc(6, &[&[3, 4, 5]])];
        assert_eq!(orbits_of(6, &g), vec![vec![0, 2], vec![1], vec![3, 4, 5]]);
        assert_eq!(cyc(6, &[&[4, 3, 5]]).to_string(), "(3 5 4)");
    }
}
