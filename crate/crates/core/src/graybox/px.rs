use super::Vig;
use crate::bits::Bits;
use crate::error::{invalid, Result};
use crate::problems::{AdditiveProblem, EvaluatedSolution};

/// How the first offspring picks each PX component; the second offspring
/// always receives the complementary choice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentChoice {
    /// Take a component from parent b iff that strictly raises the first
    /// offspring's fitness; ties stay with parent a.
    Greedy,
    /// `true` at position `c` takes component `c` from parent b.
    Mask(Vec<bool>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PxOutcome {
    pub offspring_a: EvaluatedSolution,
    pub offspring_b: EvaluatedSolution,
    /// Connected components of the VIG restricted to differing genes, each
    /// sorted, ordered by smallest gene.
    pub components: Vec<Vec<usize>>,
    /// Per component, whether offspring a took it from parent b.
    pub taken_from_b: Vec<bool>,
}

impl PxOutcome {
    /// The fitter of the two offspring, offspring a on ties.
    pub fn best(&self) -> &EvaluatedSolution {
        if self.offspring_b.fitness > self.offspring_a.fitness {
            &self.offspring_b
        } else {
            &self.offspring_a
        }
    }
}

/// Connected components of `vig` after deleting every gene on which the
/// parents agree.
pub fn px_components(vig: &Vig, a: &Bits, b: &Bits) -> Vec<Vec<usize>> {
    let n = a.len();
    let differs: Vec<bool> = (0..n).map(|i| a.get(i) != b.get(i)).collect();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for start in 0..n {
        if !differs[start] || seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut comp = Vec::new();
        while let Some(g) = stack.pop() {
            comp.push(g);
            for h in 0..n {
                if differs[h] && !seen[h] && vig.has_edge(g, h) {
                    seen[h] = true;
                    stack.push(h);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Partition crossover. Offspring fitness comes from partial evaluation of
/// the exchanged genes only.
pub fn partition_crossover(
    problem: &AdditiveProblem,
    vig: &Vig,
    xa: &EvaluatedSolution,
    xb: &EvaluatedSolution,
    choice: &ComponentChoice,
) -> Result<PxOutcome> {
    if xa.bits.len() != xb.bits.len() {
        return invalid("parents differ in length");
    }
    vig.check_size(problem.n())?;
    let components = px_components(vig, &xa.bits, &xb.bits);
    let taken_from_b: Vec<bool> = match choice {
        ComponentChoice::Mask(mask) => {
            if mask.len() != components.len() {
                return invalid(format!(
                    "choice mask has {} entries for {} components",
                    mask.len(),
                    components.len()
                ));
            }
            mask.clone()
        }
        ComponentChoice::Greedy => components
            .iter()
            .map(|comp| problem.fitness_after_flips(xa, comp) > xa.fitness)
            .collect(),
    };
    let exchanged: Vec<usize> = components
        .iter()
        .zip(&taken_from_b)
        .filter(|(_, &take)| take)
        .flat_map(|(c, _)| c.iter().copied())
        .collect();
    let mut offspring_a = xa.clone();
    let mut offspring_b = xb.clone();
    problem.apply_flips(&mut offspring_a, &exchanged);
    problem.apply_flips(&mut offspring_b, &exchanged);
    Ok(PxOutcome {
        offspring_a,
        offspring_b,
        components,
        taken_from_b,
    })
}
