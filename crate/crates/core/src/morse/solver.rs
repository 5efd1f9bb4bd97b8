use nalgebra::DVector;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Serialize, Serializer};

use super::config::PolygonConfiguration;
use super::critical::require_morse_dimension;
use crate::error::{Error, Result};
use crate::lengths::{LengthVector, SubsetMask};

#[derive(Clone, Debug, PartialEq)]
pub struct SolverOptions {
    pub seed: u64,
    /// Target residual relative to the perimeter.
    pub tol: f64,
    pub max_restarts: usize,
    /// Sweeps per restart before giving up on it.
    pub max_sweeps: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            seed: 0,
            tol: 1e-9,
            max_restarts: 8,
            max_sweeps: 20_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolygonSolution {
    pub configuration: PolygonConfiguration,
    /// Index of the restart that succeeded.
    pub restart: usize,
    pub sweeps: usize,
    /// Residual after each sweep of the successful restart, starting with the
    /// random initial configuration.
    pub history: Vec<f64>,
}

/// `E_d(l)` is empty: side `witness` is long, and `|sum l_j u_j|` never drops
/// below its excess.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmptySpaceCertificate {
    pub witness: SubsetMask,
    #[serde(serialize_with = "as_string")]
    pub min_residual: BigRational,
}

fn as_string<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(q)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Realization {
    Polygon(PolygonSolution),
    EmptySpace(EmptySpaceCertificate),
}

impl Realization {
    pub fn polygon(&self) -> Option<&PolygonSolution> {
        match self {
            Realization::Polygon(p) => Some(p),
            Realization::EmptySpace(_) => None,
        }
    }
}

/// Finds a closed polygon by exact coordinate minimization of `|sum l_j u_j|`:
/// each step replaces `u_j` by `-s_j / |s_j|` with `s_j` the sum of the other
/// terms, which never increases the residual. Restarts draw fresh random
/// directions from the seeded stream.
pub fn find_polygon(l: &LengthVector, d: u32, options: &SolverOptions) -> Result<Realization> {
    require_morse_dimension(d)?;
    if let Some(i) = l.empty_space_witness() {
        let witness = SubsetMask::singleton(i);
        return Ok(Realization::EmptySpace(EmptySpaceCertificate {
            witness,
            min_residual: l.excess(witness),
        }));
    }
    let lengths = l.to_f64();
    let target = options.tol * lengths.iter().sum::<f64>();
    let mut best = f64::INFINITY;
    for restart in 0..options.max_restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        rng.set_stream(restart as u64);
        let mut u = random_directions(&mut rng, lengths.len(), d as usize);
        let outcome = descend(&lengths, &mut u, target, options.max_sweeps);
        best = best.min(*outcome.history.last().expect("history is nonempty"));
        if outcome.converged {
            let configuration = PolygonConfiguration::new(l, u)?;
            return Ok(Realization::Polygon(PolygonSolution {
                configuration,
                restart,
                sweeps: outcome.history.len() - 1,
                history: outcome.history,
            }));
        }
    }
    Err(Error::ConvergenceFailure {
        best_residual: best,
    })
}

fn random_directions(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Vec<DVector<f64>> {
    (0..n)
        .map(|_| loop {
            let v = DVector::from_fn(d, |_, _| rng.sample::<f64, _>(StandardNormal));
            let norm = v.norm();
            if norm > 1e-3 {
                break v / norm;
            }
        })
        .collect()
}

struct Descent {
    converged: bool,
    history: Vec<f64>,
}

/// Sweeps that fail to halve the residual over this many sweeps count as a stall.
const STALL_WINDOW: usize = 500;

fn descend(lengths: &[f64], u: &mut [DVector<f64>], target: f64, max_sweeps: usize) -> Descent {
    let total = |u: &[DVector<f64>]| {
        u.iter()
            .zip(lengths)
            .fold(DVector::zeros(u[0].len()), |acc, (v, &w)| acc + v * w)
    };
    let mut sum = total(u);
    let mut history = vec![sum.norm()];
    for sweep in 1..=max_sweeps {
        for (v, &w) in u.iter_mut().zip(lengths) {
            let others = &sum - &*v * w;
            let norm = others.norm();
            if norm > 0.0 {
                *v = -&others / norm;
            }
            sum = others + &*v * w;
        }
        // Re-sum from scratch so rounding does not accumulate across sweeps.
        sum = total(u);
        let r = sum.norm();
        history.push(r);
        if r < target {
            return Descent {
                converged: true,
                history,
            };
        }
        if sweep >= STALL_WINDOW && r > 0.5 * history[sweep - STALL_WINDOW] {
            break;
        }
    }
    Descent {
        converged: false,
        history,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lengths::parse_length_vector;

    fn lv(v: &[i64]) -> LengthVector {
        LengthVector::from_integers(v).unwrap()
    }

    fn solve(l: &LengthVector, d: u32, seed: u64) -> PolygonSolution {
        match find_polygon(
            l,
            d,
            &SolverOptions {
                seed,
                ..Default::default()
            },
        )
        .unwrap()
        {
            Realization::Polygon(p) => p,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn closes_examples() {
        for (v, d) in [
            (&[1, 1, 1][..], 3),
            (&[1, 2, 2, 2, 4, 4], 3),
            (&[1, 2, 2, 2, 4, 4], 2),
            (&[1, 1, 3, 4, 8, 8], 5),
        ] {
            let l = lv(v);
            let p = solve(&l, d, 7);
            let perimeter: f64 = l.to_f64().iter().sum();
            assert!(p.configuration.residual() < 1e-9 * perimeter, "{v:?}");
            assert_eq!(p.configuration.d(), d as usize);
        }
    }

    #[test]
    fn residual_never_increases() {
        let l = parse_length_vector("3/20,3/20,3/20,3/20,2/5").unwrap();
        for seed in 0..5 {
            let p = solve(&l, 3, seed);
            for w in p.history.windows(2) {
                assert!(w[1] <= w[0] * (1.0 + 1e-12) + 1e-15);
            }
        }
    }

    #[test]
    fn empty_space_certificate() {
        let r = find_polygon(&lv(&[1, 1, 3]), 3, &SolverOptions::default()).unwrap();
        assert_eq!(
            r,
            Realization::EmptySpace(EmptySpaceCertificate {
                witness: SubsetMask::singleton(3),
                min_residual: BigRational::from_integer(1.into()),
            })
        );
        // The long side need not come last.
        let r = find_polygon(&lv(&[10, 1, 1, 1]), 3, &SolverOptions::default()).unwrap();
        assert!(matches!(r, Realization::EmptySpace(c) if c.witness == SubsetMask::singleton(1)));
    }

    #[test]
    fn deterministic_for_a_seed() {
        let l = lv(&[1, 2, 2, 2, 4, 4]);
        assert_eq!(solve(&l, 3, 11), solve(&l, 3, 11));
    }

    #[test]
    fn gives_up_cleanly() {
        let opts = SolverOptions {
            max_sweeps: 1,
            max_restarts: 2,
            tol: 1e-300,
            ..Default::default()
        };
        assert!(matches!(
            find_polygon(&lv(&[1, 2, 2, 2, 4, 4]), 3, &opts),
            Err(Error::ConvergenceFailure { .. })
        ));
        assert_eq!(
            find_polygon(&lv(&[1, 1, 1]), 1, &SolverOptions::default()),
            Err(Error::UnsupportedDimension(1))
        );
    }
}
