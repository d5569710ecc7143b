use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::perm::Permutation;
use crate::error::{Error, Result};

const RANDOM_SEED: u64 = 0x5eed_5c4e;
/// Consecutive sifts to the identity after which the randomized phase stops.
const QUIET_ROUNDS: usize = 24;

/// One level of a stabilizer chain.
#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub(crate) base_point: usize,
    /// Strong generators of the pointwise stabilizer of the earlier base points.
    pub(crate) generators: Vec<Permutation>,
    /// Orbit of `base_point` in discovery order.
    pub(crate) orbit: Vec<usize>,
    /// `transversal[p] = Some(u)` with `u(base_point) = p` for `p` in the orbit.
    pub(crate) transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base_point: usize, generators: Vec<Permutation>, degree: usize) -> Self {
        let mut level = Level {
            base_point,
            generators,
            orbit: Vec::new(),
            transversal: Vec::new(),
        };
        level.rebuild(degree);
        level
    }

    fn rebuild(&mut self, degree: usize) {
        let mut transversal: Vec<Option<Permutation>> = vec![None; degree];
        transversal[self.base_point] = Some(Permutation::identity(degree));
        let mut orbit = vec![self.base_point];
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for s in &self.generators {
                let q = s.apply(p);
                if transversal[q].is_none() {
                    let u = s.compose(transversal[p].as_ref().expect("orbit point has a coset rep"));
                    transversal[q] = Some(u);
                    orbit.push(q);
                }
            }
        }
        self.orbit = orbit;
        self.transversal = transversal;
    }
}

/// A permutation group stored with a verified base and strong generating set.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    pub(crate) levels: Vec<Level>,
}

/// Builds the stabilizer chain of the group generated by `generators`.
pub fn schreier_sims(degree: usize, generators: &[Permutation]) -> Result<PermutationGroup> {
    PermutationGroup::new(degree, generators.to_vec())
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_base_prefix(degree, generators, &[])
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
        }
    }

    /// Symmetric group on all points.
    pub fn symmetric(degree: usize) -> Self {
        Self::symmetric_blocks(degree, &[(0..degree).collect()])
    }

    /// Direct product of the symmetric groups on the given disjoint blocks.
    pub fn symmetric_blocks(degree: usize, blocks: &[Vec<usize>]) -> Self {
        let mut gens = Vec::new();
        for block in blocks {
            if block.len() < 2 {
                continue;
            }
            let transposition = Permutation::from_cycles(degree, &[&block[..2]]).expect("valid block");
            let cycle = Permutation::from_cycles(degree, &[block.as_slice()]).expect("valid block");
            gens.push(transposition);
            if block.len() > 2 {
                gens.push(cycle);
            }
        }
        Self::new(degree, gens).expect("block generators are valid")
    }

    /// Stabilizer chain whose base starts with `prefix` (kept even where the
    /// corresponding basic orbit is trivial).
    pub fn with_base_prefix(
        degree: usize,
        generators: Vec<Permutation>,
        prefix: &[usize],
    ) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        for &p in prefix {
            if p >= degree {
                return Err(Error::IndexOutOfRange { index: p, degree });
            }
        }
        let generators: Vec<Permutation> = generators.into_iter().filter(|g| !g.is_identity()).collect();
        let mut group = PermutationGroup {
            degree,
            generators: generators.clone(),
            levels: Vec::new(),
        };
        let mut seen = vec![false; degree];
        for &p in prefix {
            if !seen[p] {
                seen[p] = true;
                group.levels.push(Level::new(p, Vec::new(), degree));
            }
        }
        for g in &generators {
            group.insert_strong(g.clone());
        }
        group.randomized_phase();
        group.complete();
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

    /// Strong generating set (the generators of the first level).
    pub fn strong_generators(&self) -> &[Permutation] {
        self.levels.first().map_or(&[], |l| l.generators.as_slice())
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.iter().all(|l| l.orbit.len() == 1)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, depth) = self.sift(g.clone(), 0);
        depth == self.levels.len() && residue.is_identity()
    }

    /// Orbit of a single point, in breadth-first discovery order.
    pub fn point_orbit(&self, p: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[p] = true;
        let mut orbit = vec![p];
        let mut head = 0;
        while head < orbit.len() {
            let q = orbit[head];
            head += 1;
            for g in &self.generators {
                let r = g.apply(q);
                if !seen[r] {
                    seen[r] = true;
                    orbit.push(r);
                }
            }
        }
        orbit
    }

    /// Orbits of all points, each sorted, listed by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if seen[p] {
                continue;
            }
            let mut orbit = self.point_orbit(p);
            for &q in &orbit {
                seen[q] = true;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// Pointwise stabilizer of `p`, reusing this chain when `p` is the first
    /// base point.
    pub fn point_stabilizer(&self, p: usize) -> PermutationGroup {
        let chain = if self.levels.first().map(|l| l.base_point) == Some(p) {
            self.clone()
        } else {
            Self::with_base_prefix(self.degree, self.generators.clone(), &[p])
                .expect("generators already validated")
        };
        chain.drop_first_level()
    }

    fn drop_first_level(mut self) -> PermutationGroup {
        if self.levels.is_empty() {
            return self;
        }
        self.levels.remove(0);
        let generators = self.levels.first().map(|l| l.generators.clone()).unwrap_or_default();
        PermutationGroup {
            degree: self.degree,
            generators,
            levels: self.levels,
        }
    }

    /// A uniformly distributed element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let p = level.orbit[rng.gen_range(0..level.orbit.len())];
            let u = level.transversal[p].as_ref().expect("orbit point has a coset rep");
            g = u.compose(&g);
        }
        g
    }

    /// All elements, or `BudgetExceeded` if the order is larger than `budget`.
    pub fn elements(&self, budget: usize) -> Result<Vec<Permutation>> {
        if self.order() > BigUint::from(budget) {
            return Err(Error::BudgetExceeded(budget));
        }
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for &p in &level.orbit {
                let u = level.transversal[p].as_ref().expect("orbit point has a coset rep");
                for g in &out {
                    next.push(u.compose(g));
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Sifts `g` through the chain from level `start`. Returns the residue and
    /// the level where sifting stopped (`levels.len()` if it passed all).
    pub(crate) fn sift(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (j, level) in self.levels.iter().enumerate().skip(start) {
            let image = g.apply(level.base_point);
            match &level.transversal[image] {
                Some(u) => g = u.inverse().compose(&g),
                None => return (g, j),
            }
        }
        (g, self.levels.len())
    }

    /// Adds a non-identity `h` as a strong generator of every level down to
    /// the first base point it moves, extending the base when needed. Returns
    /// that level.
    fn insert_strong(&mut self, h: Permutation) -> usize {
        let mut j = 0;
        loop {
            if j == self.levels.len() {
                let point = h.first_moved_point().expect("residue is not the identity");
                self.levels.push(Level::new(point, Vec::new(), self.degree));
            }
            self.levels[j].generators.push(h.clone());
            self.levels[j].rebuild(self.degree);
            if h.apply(self.levels[j].base_point) != self.levels[j].base_point {
                return j;
            }
            j += 1;
        }
    }

    fn randomized_phase(&mut self) {
        if self.generators.is_empty() {
            return;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
        let mut pool: Vec<Permutation> = self.generators.clone();
        while pool.len() < 10 {
            pool.push(pool[pool.len() % self.generators.len()].clone());
        }
        let mut accumulator = Permutation::identity(self.degree);
        let mut quiet = 0;
        while quiet < QUIET_ROUNDS {
            // Product replacement with an accumulator ("rattle").
            let i = rng.gen_range(0..pool.len());
            let mut j = rng.gen_range(0..pool.len() - 1);
            if j >= i {
                j += 1;
            }
            pool[i] = if rng.gen_bool(0.5) {
                pool[i].compose(&pool[j])
            } else {
                pool[j].compose(&pool[i])
            };
            accumulator = accumulator.compose(&pool[i]);
            let (residue, depth) = self.sift(accumulator.clone(), 0);
            if residue.is_identity() && depth == self.levels.len() {
                quiet += 1;
            } else {
                quiet = 0;
                self.insert_strong(residue);
            }
        }
    }

    /// Deterministic Schreier–Sims: every Schreier generator of every level
    /// sifts to the identity on exit.
    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let level = i - 1;
            let mut restart = None;
            'scan: for oi in 0..self.levels[level].orbit.len() {
                let beta = self.levels[level].orbit[oi];
                for si in 0..self.levels[level].generators.len() {
                    let lv = &self.levels[level];
                    let s = &lv.generators[si];
                    let u_beta = lv.transversal[beta].as_ref().expect("orbit point");
                    let u_img = lv.transversal[s.apply(beta)].as_ref().expect("orbit is closed");
                    let schreier = u_img.inverse().compose(&s.compose(u_beta));
                    let (residue, depth) = self.sift(schreier, level + 1);
                    if depth < self.levels.len() || !residue.is_identity() {
                        let touched = self.insert_strong(residue);
                        restart = Some(touched + 1);
                        break 'scan;
                    }
                }
            }
            match restart {
                Some(next) => i = next,
                None => i -= 1,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    fn brute_force_order(degree: usize, gens: &[Permutation]) -> usize {
        let mut seen = std::collections::HashSet::new();
        let id = Permutation::identity(degree);
        let mut queue = vec![id.clone()];
        seen.insert(id);
        while let Some(g) = queue.pop() {
            for s in gens {
                let h = s.compose(&g);
                if seen.insert(h.clone()) {
                    queue.push(h);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn symmetric_group_s4() {
        let g = schreier_sims(4, &[p("(1 2)", 4), p("(1 2 3 4)", 4)]).unwrap();
        assert_eq!(g.order(), BigUint::from(24u32));
        assert_eq!(g.elements(100).unwrap().len(), 24);
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = schreier_sims(5, &[]).unwrap();
        assert_eq!(g.order(), BigUint::one());
        assert!(g.contains(&Permutation::identity(5)));
        assert!(!g.contains(&p("(1 2)", 5)));
    }

    #[test]
    fn cube_vertex_hyperoctahedral_group() {
        // Vertices indexed by bit patterns of (x1, x2, x3) in {-1, 1}^3.
        let flip = |bit: usize| Permutation::from_images((0..8).map(|v| v ^ (1 << bit)).collect()).unwrap();
        let swap = |a: usize, b: usize| {
            Permutation::from_images(
                (0..8)
                    .map(|v: usize| {
                        let (x, y) = ((v >> a) & 1, (v >> b) & 1);
                        (v & !(1 << a) & !(1 << b)) | (y << a) | (x << b)
                    })
                    .collect(),
            )
            .unwrap()
        };
        let gens = vec![flip(0), flip(1), flip(2), swap(0, 1), swap(1, 2)];
        let g = schreier_sims(8, &gens).unwrap();
        assert_eq!(g.order(), BigUint::from(48u32));
        assert_eq!(brute_force_order(8, &gens), 48);
    }

    #[test]
    fn base_prefix_is_respected_and_order_unchanged() {
        let gens = vec![p("(1 2 3 4 5 6)", 6), p("(1 2)", 6)];
        let g = PermutationGroup::with_base_prefix(6, gens, &[4, 2]).unwrap();
        assert_eq!(&g.base()[..2], &[4, 2]);
        assert_eq!(g.order(), BigUint::from(720u32));
    }

    #[test]
    fn point_stabilizer_order() {
        let g = PermutationGroup::symmetric(5);
        assert_eq!(g.point_stabilizer(3).order(), BigUint::from(24u32));
        assert_eq!(g.point_stabilizer(g.base()[0]).order(), BigUint::from(24u32));
    }

    #[test]
    fn members_and_random_elements() {
        let gens = vec![p("(1 2 3)(4 5)", 7), p("(2 6 7)", 7)];
        let g = schreier_sims(7, &gens).unwrap();
        assert_eq!(g.order(), BigUint::from(brute_force_order(7, &gens)));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            assert!(g.contains(&g.random_element(&mut rng)));
        }
        for s in &gens {
            assert!(g.contains(s));
        }
    }

    #[test]
    fn block_products() {
        let g = PermutationGroup::symmetric_blocks(5, &[vec![0, 1, 2], vec![3, 4]]);
        assert_eq!(g.order(), BigUint::from(12u32));
        assert_eq!(g.orbits(), vec![vec![0, 1, 2], vec![3, 4]]);
    }

    #[test]
    fn every_level_generates_its_stabilizer() {
        let gens = vec![p("(2 5 7)(4 6)", 7), p("(1 6 5 3)(2 7)", 7)];
        for prefix in [vec![], vec![1], vec![3, 5], vec![6, 0, 2]] {
            let g = PermutationGroup::with_base_prefix(7, gens.clone(), &prefix).unwrap();
            assert_eq!(g.order(), BigUint::from(5040u32));
            for k in 0..g.levels.len() {
                let below: usize = g.levels[k..].iter().map(|l| l.orbit.len()).product();
                let generated = brute_force_order(7, &g.levels[k].generators);
                assert_eq!(generated, below, "prefix {prefix:?} level {k}");
            }
        }
    }
}
