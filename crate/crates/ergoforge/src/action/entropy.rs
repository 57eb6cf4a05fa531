use num::Zero;

use super::{FiniteProbSpace, Labeling};
use crate::rational::{to_f64, Q};

/// `-Σ w log w` in nats, with `0 log 0 = 0`.
pub fn entropy_of_weights<'a>(ws: impl IntoIterator<Item = &'a Q>) -> f64 {
    ws.into_iter()
        .filter(|w| !w.is_zero())
        .map(|w| {
            let p = to_f64(w);
            -p * p.ln()
        })
        .sum()
}

fn block_masses(space: &FiniteProbSpace, alpha: &Labeling) -> Vec<Q> {
    let mut m = vec![Q::zero(); alpha.arity];
    for (x, &v) in alpha.values.iter().enumerate() {
        m[v] += &space.weights[x];
    }
    m
}

/// Shannon entropy of the partition into level sets of `alpha`.
pub fn entropy(space: &FiniteProbSpace, alpha: &Labeling) -> f64 {
    entropy_of_weights(&block_masses(space, alpha))
}

/// The common refinement `α ∨ β`, labelled `a·|β| + b`.
pub fn join_labelings(alpha: &Labeling, beta: &Labeling) -> Labeling {
    Labeling {
        values: alpha.values.iter().zip(&beta.values).map(|(&a, &b)| a * beta.arity + b).collect(),
        arity: alpha.arity * beta.arity,
    }
}

/// `H(α | β) = H(α ∨ β) - H(β)`.
pub fn relative_entropy(space: &FiniteProbSpace, alpha: &Labeling, beta: &Labeling) -> f64 {
    entropy(space, &join_labelings(alpha, beta)) - entropy(space, beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn known_values() {
        let sp = FiniteProbSpace::uniform(2);
        let h = entropy(&sp, &Labeling::new(vec![0, 1], 2).unwrap());
        assert!((h - 2f64.ln()).abs() < 1e-15);
        assert_eq!(entropy(&sp, &Labeling::constant(2, 1)), 0.0);
        let e = entropy_of_weights(&[q(1, 4), q(3, 4)]);
        assert!((e - 0.562335).abs() < 1e-6);
    }

    #[test]
    fn conditioning_on_itself() {
        let sp = FiniteProbSpace::uniform(3);
        let a = Labeling::new(vec![0, 1, 1], 2).unwrap();
        assert!(relative_entropy(&sp, &a, &a).abs() < 1e-15);
    }
}
