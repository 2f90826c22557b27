use rand::Rng;

use super::{differential_evolution, nelder_mead, Block, OptimiserConfig, Problem, Stop};

/// Coordinate partition for the hybrid scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridBlocks {
    /// Searched by DE.
    pub de: Vec<usize>,
    /// Searched by NM.
    pub nm: Vec<usize>,
}

fn block_finished(result: Result<(), Stop>) -> Result<(), Stop> {
    match result {
        Err(Stop::Budget) | Ok(()) => Ok(()),
        Err(e) => Err(e),
    }
}

/// Alternating block-coordinate search: each round runs DE over the
/// `blocks.de` coordinates with everything else frozen, then NM over the
/// `blocks.nm` coordinates at the DE incumbent, until the problem's budget
/// is spent. Coordinates in neither block keep their value from `start`.
///
/// From the second round on the DE population carries the incumbent, and
/// NM starts from the current angles, so rounds never lose ground.
pub fn hybrid_de_nm<R: Rng + ?Sized>(
    problem: &mut dyn Problem,
    rng: &mut R,
    config: &OptimiserConfig,
    blocks: &HybridBlocks,
    start: Vec<f64>,
) -> Result<(), Stop> {
    let params = config.hybrid;
    if params.de_budget + params.nm_budget == 0 {
        return Err(Stop::Failed(crate::WecError::Config(
            "hybrid needs a positive DE or NM budget per round".into(),
        )));
    }
    let mut base = start;
    let mut elite: Option<Vec<f64>> = None;
    while problem.remaining() > 0 {
        let before = problem.remaining();
        if params.de_budget > 0 && !blocks.de.is_empty() {
            let mut block = Block::new(problem, base.clone(), blocks.de.clone(), params.de_budget)?;
            let initial = elite.as_ref().map(|e| {
                let mut pop: Vec<Vec<f64>> = (0..config.de.population)
                    .map(|_| block.bounds().sample(rng))
                    .collect();
                pop[0].clone_from(e);
                pop
            });
            block_finished(differential_evolution(&mut block, rng, &config.de, initial))?;
            let (x, f) = block.best();
            if f.is_finite() {
                let x = x.to_vec();
                base = block.embed(&x);
                elite = Some(x);
            }
        }
        if params.nm_budget > 0 && !blocks.nm.is_empty() && problem.remaining() > 0 {
            let current: Vec<f64> = blocks.nm.iter().map(|&i| base[i]).collect();
            let mut block = Block::new(problem, base.clone(), blocks.nm.clone(), params.nm_budget)?;
            block_finished(nelder_mead(&mut block, rng, &config.nm, Some(&current)))?;
            let (x, f) = block.best();
            if f.is_finite() {
                base = block.embed(x);
            }
        }
        if problem.remaining() == before {
            break;
        }
    }
    Ok(())
}
