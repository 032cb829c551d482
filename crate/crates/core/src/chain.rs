//! Deterministic Schreier-Sims stabilizer chains.

use crate::perm::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    /// Strong generators fixing every earlier base point.
    gens: Vec<Permutation>,
    /// `transversal[b]` maps the base point to `b` for each orbit point `b`.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            transversal,
            orbit: vec![base],
        }
    }

    /// Extends orbit and transversal after generators were appended.
    fn grow_orbit(&mut self) {
        let mut i = 0;
        // Earlier orbit points need revisiting under the new generators too.
        while i < self.orbit.len() {
            let beta = self.orbit[i];
            for s in &self.gens {
                let gamma = s.image(beta);
                if self.transversal[gamma].is_none() {
                    let u = self.transversal[beta].as_ref().unwrap().then(s);
                    self.transversal[gamma] = Some(u);
                    self.orbit.push(gamma);
                }
            }
            i += 1;
        }
    }
}

/// Stabilizer chain with base `b_0, b_1, ..` where level `i` holds the
/// stabilizer of `b_0 .. b_{i-1}`.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    /// Builds the chain for `<gens>`, starting the base with `prefix` and
    /// extending it with the least point moved by each new residue.
    pub fn new(degree: usize, gens: &[Permutation], prefix: &[usize]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for &b in prefix {
            if chain.levels.iter().all(|l| l.base != b) {
                chain.levels.push(Level::new(b, degree));
            }
        }
        for g in gens {
            chain.extend(g);
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn orbit(&self, level: usize) -> &[usize] {
        &self.levels[level].orbit
    }

    pub fn transversal(&self, level: usize, point: usize) -> Option<&Permutation> {
        self.levels[level].transversal[point].as_ref()
    }

    /// Generators of the stabilizer of the first `level` base points.
    pub fn stabilizer_gens(&self, level: usize) -> &[Permutation] {
        if level < self.levels.len() {
            &self.levels[level].gens
        } else {
            &[]
        }
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level at
    /// which sifting stopped (`depth()` if it went all the way through).
    pub fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.image(level.base);
            match &level.transversal[beta] {
                None => return (h, i),
                Some(u) => {
                    if beta != level.base {
                        h = h.then(&u.inverse());
                    }
                }
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let (res, _) = self.strip(g, 0);
        res.is_identity()
    }

    /// Adds a generator, returning whether the group grew.
    pub fn extend(&mut self, g: &Permutation) -> bool {
        let (res, j) = self.strip(g, 0);
        if res.is_identity() {
            return false;
        }
        self.insert(res, 0, j);
        self.saturate(j);
        true
    }

    /// Adds `res` to levels `from..=to`, creating level `to` if needed.
    fn insert(&mut self, res: Permutation, from: usize, to: usize) {
        if to == self.levels.len() {
            let base = res
                .least_moved_point()
                .expect("nontrivial residue moves a point");
            self.levels.push(Level::new(base, self.degree));
        }
        for level in &mut self.levels[from..=to] {
            level.gens.push(res.clone());
            level.grow_orbit();
        }
    }

    /// Restores the strong generating property for levels `..=start`,
    /// assuming every deeper level is already complete.
    fn saturate(&mut self, start: usize) {
        let mut i = start as isize;
        while i >= 0 {
            let level = i as usize;
            match self.failing_schreier_generator(level) {
                Some((res, j)) => {
                    self.insert(res, level + 1, j);
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
    }

    fn failing_schreier_generator(&self, level: usize) -> Option<(Permutation, usize)> {
        let l = &self.levels[level];
        for &beta in &l.orbit {
            let u = l.transversal[beta].as_ref().unwrap();
            for s in &l.gens {
                let us = u.then(s);
                let v = l.transversal[s.image(beta)].as_ref().unwrap();
                if us == *v {
                    continue;
                }
                let h = us.then(&v.inverse());
                let (res, j) = self.strip(&h, level + 1);
                if !res.is_identity() {
                    return Some((res, j));
                }
            }
        }
        None
    }

    /// Every group element, each exactly once.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for &beta in &level.orbit {
                let u = level.transversal[beta].as_ref().unwrap();
                for h in &out {
                    next.push(h.then(u));
                }
            }
            out = next;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, degree: usize) -> Permutation {
        Permutation::parse(text, degree).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 2..=8usize {
            let gens = vec![
                Permutation::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap(),
                p("(1,2)", n),
            ];
            let chain = StabChain::new(n, &gens, &[]);
            let fact: u128 = (1..=n as u128).product();
            assert_eq!(chain.order(), fact);
        }
    }

    #[test]
    fn prescribed_base_is_respected() {
        let gens = vec![p("(1,2,3)", 4), p("(1,2)", 4)];
        let chain = StabChain::new(4, &gens, &[2, 3, 0]);
        assert_eq!(&chain.base()[..3], &[2, 3, 0]);
        assert_eq!(chain.order(), 6);
        assert_eq!(chain.orbit(1).len(), 1);
    }

    #[test]
    fn elements_are_distinct_and_complete() {
        let gens = vec![p("(1,2)(3,4)", 6), p("(1,2)(5,6)", 6)];
        let chain = StabChain::new(6, &gens, &[]);
        let elems = chain.elements();
        assert_eq!(elems.len(), 4);
        let set: std::collections::HashSet<_> = elems.iter().collect();
        assert_eq!(set.len(), 4);
        assert!(elems.iter().all(|e| chain.contains(e)));
    }

    #[test]
    fn extend_reports_growth() {
        let mut chain = StabChain::new(4, &[p("(1,2,3,4)", 4)], &[]);
        assert!(!chain.extend(&p("(1,3)(2,4)", 4)));
        assert!(chain.extend(&p("(1,3)", 4)));
        assert_eq!(chain.order(), 8);
    }
}
