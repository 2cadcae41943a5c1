//! Per-function checks of the known bounds on essential arity under
//! identification of variables.

use crate::anf::{from_anf, ZhegalkinPolynomial};
use crate::classify::gap_via_classifier;
use crate::error::{Error, Result};
use crate::function::{FiniteFunction, VariableIndex};
use crate::minor::{gap_report, identify_at};

/// A function with `ess f > k` has an identification minor with at least
/// `ess f - k` essential variables, i.e. `gap f <= k`.
pub fn check_gap_bound(f: &FiniteFunction) -> Result<bool> {
    let k = f.domain_size() as usize;
    let ess = f.ess();
    if ess <= k {
        return Err(Error::HypothesisNotMet(format!("ess = {ess} is not greater than k = {k}")));
    }
    Ok(gap_report(f)?.gap <= k)
}

/// A Boolean function with `ess f >= 2` has gap 1 or 2.
pub fn check_boolean_bound(f: &FiniteFunction) -> Result<bool> {
    if !f.is_boolean() {
        return Err(Error::NotBoolean { k: f.domain_size(), b: f.codomain_size() });
    }
    let r = gap_report(f)?;
    Ok(r.essl + 2 >= r.ess)
}

/// First `(j, c)` (by `j`, then `c`) such that fixing `x_j = c` leaves a
/// function depending on all remaining `n - 1` variables. `None` means no
/// such restriction exists.
pub fn find_restriction_witness(f: &FiniteFunction) -> Result<Option<(VariableIndex, u32)>> {
    let n = f.arity();
    if let Some(pos) = (0..n).find(|&p| !f.is_essential_at(p)) {
        return Err(Error::NotTotallyEssential(pos + 1));
    }
    if n < 2 {
        return Err(Error::EssentialArityTooSmall { ess: n });
    }
    for j in (1..=n).map(VariableIndex::new) {
        for c in 0..f.domain_size() {
            if f.restrict(j, c)?.ess() == n - 1 {
                return Ok(Some((j, c)));
            }
        }
    }
    Ok(None)
}

/// For `ess f = n > k`: the first pair `1 <= i < j <= k + 1` such that one of
/// `x_1..x_{k+1}` is essential in `f_{i<-j}`.
pub fn check_kplus1_lemma(f: &FiniteFunction) -> Result<Option<(VariableIndex, VariableIndex)>> {
    let n = f.arity();
    let k = f.domain_size() as usize;
    let ess = f.ess();
    if ess != n || n <= k {
        return Err(Error::HypothesisNotMet(format!("need ess = n > k, got ess = {ess}, n = {n}, k = {k}")));
    }
    for pi in 0..=k {
        for pj in pi + 1..=k {
            let minor = identify_at(f, pi, pj);
            if (0..=k).any(|p| minor.is_essential_at(p)) {
                return Ok(Some((VariableIndex::new(pi + 1), VariableIndex::new(pj + 1))));
            }
        }
    }
    Ok(None)
}

/// Classifier and brute force agree on the arity gap.
pub fn check_classifier_agreement(f: &FiniteFunction) -> Result<bool> {
    let closed = gap_via_classifier(f)?;
    Ok(closed == gap_report(f)?.gap)
}

/// A degree-2 polynomial with at least four occurring variables has gap 1.
pub fn check_degree_two(p: &ZhegalkinPolynomial) -> Result<bool> {
    let ess = p.occurring_variables().len();
    if p.degree() != 2 || ess < 4 {
        return Err(Error::HypothesisNotMet(format!(
            "need degree 2 and ess >= 4, got degree {} and ess {ess}",
            p.degree()
        )));
    }
    Ok(gap_report(&from_anf(p)?)?.gap == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> VariableIndex {
        VariableIndex::new(i)
    }

    fn xor3() -> FiniteFunction {
        FiniteFunction::from_fn(2, 2, 3, |x| x[0] ^ x[1] ^ x[2]).unwrap()
    }

    fn maj3() -> FiniteFunction {
        FiniteFunction::from_fn(2, 2, 3, |x| u32::from(x.iter().sum::<u32>() >= 2)).unwrap()
    }

    fn and() -> FiniteFunction {
        FiniteFunction::new(2, 2, 2, vec![0, 0, 0, 1]).unwrap()
    }

    #[test]
    fn gap_bound() {
        assert!(check_gap_bound(&xor3()).unwrap());
        let xor = FiniteFunction::new(2, 2, 2, vec![0, 1, 1, 0]).unwrap();
        assert!(matches!(check_gap_bound(&xor), Err(Error::HypothesisNotMet(_))));
        let f = FiniteFunction::from_fn(2, 2, 4, |x| (x[0] & x[1]) ^ x[2] ^ (x[3] & x[0])).unwrap();
        assert_eq!(f.ess(), 4);
        assert!(check_gap_bound(&f).unwrap());
    }

    #[test]
    fn boolean_bound() {
        let xor = FiniteFunction::new(2, 2, 2, vec![0, 1, 1, 0]).unwrap();
        assert!(check_boolean_bound(&xor).unwrap());
        assert!(check_boolean_bound(&and()).unwrap());
        let c = FiniteFunction::constant(2, 2, 2, 0).unwrap();
        assert_eq!(check_boolean_bound(&c), Err(Error::EssentialArityTooSmall { ess: 0 }));
        let t = FiniteFunction::constant(3, 2, 2, 0).unwrap();
        assert_eq!(check_boolean_bound(&t), Err(Error::NotBoolean { k: 3, b: 2 }));
    }

    #[test]
    fn restriction_witness() {
        assert_eq!(find_restriction_witness(&xor3()).unwrap(), Some((v(1), 0)));
        assert_eq!(find_restriction_witness(&maj3()).unwrap(), Some((v(1), 0)));
        assert_eq!(find_restriction_witness(&and()).unwrap(), Some((v(1), 1)));
        let proj = FiniteFunction::new(2, 2, 2, vec![0, 0, 1, 1]).unwrap();
        assert_eq!(find_restriction_witness(&proj), Err(Error::NotTotallyEssential(2)));
    }

    #[test]
    fn kplus1_lemma() {
        assert_eq!(check_kplus1_lemma(&xor3()).unwrap(), Some((v(1), v(2))));
        assert_eq!(check_kplus1_lemma(&maj3()).unwrap(), Some((v(1), v(2))));
        assert!(matches!(check_kplus1_lemma(&and()), Err(Error::HypothesisNotMet(_))));
        let dummy = FiniteFunction::from_fn(2, 2, 3, |x| x[0] ^ x[1]).unwrap();
        assert!(matches!(check_kplus1_lemma(&dummy), Err(Error::HypothesisNotMet(_))));
    }

    #[test]
    fn degree_two() {
        let p = ZhegalkinPolynomial::from_monomials(4, [vec![1, 2], vec![3, 4]]).unwrap();
        assert!(check_degree_two(&p).unwrap());
        let p = ZhegalkinPolynomial::from_monomials(4, [vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap();
        assert!(matches!(check_degree_two(&p), Err(Error::HypothesisNotMet(_))));
    }
}
