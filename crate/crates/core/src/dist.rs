//! Discrete joint distributions with exact rational probabilities, Shannon
//! entropy in bits, and exact entropies of the form `q·log₂k`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::setfunc::{rational_to_f64, SetFunctionVector};
use crate::subset::Subset;

/// Largest number of variables for [`JointDistribution::entropy_vector`].
pub const MAX_ENTROPY_VECTOR_VARS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub alphabet: u32,
}

impl Variable {
    pub fn new(name: impl Into<String>, alphabet: u32) -> Self {
        Variable {
            name: name.into(),
            alphabet,
        }
    }
}

/// Exact pmf over a product of finite alphabets. Only outcomes of positive
/// probability are stored.
#[derive(Clone, Debug)]
pub struct JointDistribution {
    variables: Vec<Variable>,
    outcomes: Vec<Vec<u32>>,
    probs: Vec<BigRational>,
    probs_f64: Vec<f64>,
    packed: Option<Packed>,
}

/// Outcomes packed into one word each; a variable subset is projected by
/// masking out the bit fields of the other variables.
#[derive(Clone, Debug)]
struct Packed {
    keys: Vec<u64>,
    fields: Vec<u64>,
}

impl Packed {
    fn build(variables: &[Variable], outcomes: &[Vec<u32>]) -> Option<Packed> {
        let widths: Vec<u32> = variables
            .iter()
            .map(|v| 32 - v.alphabet.saturating_sub(1).leading_zeros())
            .collect();
        if widths.iter().sum::<u32>() > 64 {
            return None;
        }
        let mut shifts = Vec::with_capacity(widths.len());
        let mut fields = Vec::with_capacity(widths.len());
        let mut offset = 0;
        for &w in &widths {
            shifts.push(offset);
            fields.push(if w == 0 {
                0
            } else {
                (u64::MAX >> (64 - w)) << offset
            });
            offset += w;
        }
        let keys = outcomes
            .iter()
            .map(|o| {
                o.iter()
                    .zip(&shifts)
                    .fold(0u64, |acc, (&x, &sh)| acc | (x as u64) << sh)
            })
            .collect();
        Some(Packed { keys, fields })
    }

    fn mask(&self, vars: Subset) -> u64 {
        vars.elements().fold(0, |acc, v| acc | self.fields[v])
    }
}

impl JointDistribution {
    pub fn new(variables: Vec<Variable>, pmf: BTreeMap<Vec<u32>, BigRational>) -> Result<Self> {
        let invalid = |m: String| Err(Error::InvalidDistribution(m));
        if variables.is_empty() {
            return invalid("no variables".into());
        }
        let mut total = BigRational::zero();
        let mut outcomes = Vec::with_capacity(pmf.len());
        let mut probs = Vec::with_capacity(pmf.len());
        for (outcome, p) in pmf {
            if outcome.len() != variables.len() {
                return invalid(format!(
                    "outcome {outcome:?} has arity {}, expected {}",
                    outcome.len(),
                    variables.len()
                ));
            }
            if let Some((i, _)) = outcome
                .iter()
                .zip(&variables)
                .enumerate()
                .find(|(_, (&x, v))| x >= v.alphabet)
            {
                return invalid(format!("outcome {outcome:?}: symbol {i} out of range"));
            }
            if p.is_negative() {
                return invalid(format!("negative probability for {outcome:?}"));
            }
            total += &p;
            if !p.is_zero() {
                outcomes.push(outcome);
                probs.push(p);
            }
        }
        if !total.is_one() {
            return invalid(format!("probabilities sum to {total}, not 1"));
        }
        let probs_f64 = probs.iter().map(rational_to_f64).collect();
        let packed = Packed::build(&variables, &outcomes);
        Ok(JointDistribution {
            variables,
            outcomes,
            probs,
            probs_f64,
            packed,
        })
    }

    /// Distribution of equally weighted samples, `p(x) = count(x) / Σ count`.
    pub fn from_counts(variables: Vec<Variable>, counts: HashMap<Vec<u32>, u64>) -> Result<Self> {
        let total: u64 = counts.values().sum();
        if total == 0 {
            return Err(Error::InvalidDistribution("no samples".into()));
        }
        let pmf = counts
            .into_iter()
            .map(|(o, c)| (o, BigRational::new(c.into(), total.into())))
            .collect();
        JointDistribution::new(variables, pmf)
    }

    /// Product of independent marginals, each given as a probability list.
    pub fn independent(marginals: Vec<(String, Vec<BigRational>)>) -> Result<Self> {
        let variables: Vec<Variable> = marginals
            .iter()
            .map(|(name, p)| Variable::new(name.clone(), p.len() as u32))
            .collect();
        let mut pmf: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        pmf.insert(Vec::new(), BigRational::one());
        for (_, p) in &marginals {
            let mut next = BTreeMap::new();
            for (prefix, q) in &pmf {
                for (x, px) in p.iter().enumerate() {
                    let mut o = prefix.clone();
                    o.push(x as u32);
                    next.insert(o, q * px);
                }
            }
            pmf = next;
        }
        JointDistribution::new(variables, pmf)
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }

    /// Outcomes of positive probability with their probabilities.
    pub fn support(&self) -> impl Iterator<Item = (&[u32], &BigRational)> {
        self.outcomes.iter().map(Vec::as_slice).zip(&self.probs)
    }

    fn check_vars(&self, vars: Subset) -> Result<()> {
        vars.check_within(self.len())
    }

    fn project(outcome: &[u32], vars: Subset) -> Vec<u32> {
        vars.elements().map(|i| outcome[i]).collect()
    }

    /// Exact marginal pmf on `vars`, outcomes listed in variable order.
    pub fn marginal(&self, vars: Subset) -> Result<BTreeMap<Vec<u32>, BigRational>> {
        self.check_vars(vars)?;
        let mut m: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (o, p) in self.support() {
            *m.entry(Self::project(o, vars))
                .or_insert_with(BigRational::zero) += p;
        }
        Ok(m)
    }

    /// H(vars) in bits.
    pub fn entropy(&self, vars: Subset) -> Result<f64> {
        if vars.is_empty() {
            return Err(Error::Precondition(
                "entropy of an empty variable set".into(),
            ));
        }
        self.check_vars(vars)?;
        Ok(self.entropy_unchecked(vars))
    }

    fn entropy_unchecked(&self, vars: Subset) -> f64 {
        if vars.is_empty() {
            return 0.0;
        }
        let mut masses: Vec<f64> = match &self.packed {
            Some(packed) => {
                let mask = packed.mask(vars);
                let mut m: HashMap<u64, f64> = HashMap::new();
                for (&key, &p) in packed.keys.iter().zip(&self.probs_f64) {
                    *m.entry(key & mask).or_insert(0.0) += p;
                }
                m.into_values().collect()
            }
            None => {
                let mut m: HashMap<Vec<u32>, f64> = HashMap::new();
                for (o, &p) in self.outcomes.iter().zip(&self.probs_f64) {
                    *m.entry(Self::project(o, vars)).or_insert(0.0) += p;
                }
                m.into_values().collect()
            }
        };
        // fixed summation order keeps results identical across runs
        masses.sort_by(f64::total_cmp);
        masses
            .into_iter()
            .filter(|&p| p > 0.0)
            .map(|p| -p * p.log2())
            .sum()
    }

    /// H(target | given) = H(target ∪ given) − H(given), in bits.
    pub fn conditional_entropy(&self, target: Subset, given: Subset) -> Result<f64> {
        self.check_vars(target)?;
        self.check_vars(given)?;
        if !target.intersection(given).is_empty() {
            return Err(Error::Precondition(format!(
                "target {target} and conditioning set {given} overlap"
            )));
        }
        Ok(self.entropy_unchecked(target.union(given)) - self.entropy_unchecked(given))
    }

    /// Entropy of every nonempty variable subset.
    pub fn entropy_vector(&self) -> Result<SetFunctionVector<f64>> {
        if self.len() > MAX_ENTROPY_VECTOR_VARS {
            return Err(Error::SizeBound {
                what: "entropy vector variable count",
                actual: self.len(),
                limit: MAX_ENTROPY_VECTOR_VARS,
            });
        }
        Ok(SetFunctionVector::from_fn(self.len(), |s| {
            self.entropy_unchecked(s)
        }))
    }

    /// Whether the marginal of `var` has a single nonzero probability value.
    pub fn is_uniform_on_support(&self, var: usize) -> Result<UniformSupport> {
        let m = self.marginal(Subset::singleton(var))?;
        let mut values = m.values();
        let first = values.next().expect("a distribution has nonempty support");
        Ok(UniformSupport {
            uniform: values.all(|p| p == first),
            support: m.len(),
        })
    }

    /// Exact check that the joint pmf on `vars` is the product of its
    /// single-variable marginals.
    pub fn factorizes(&self, vars: Subset) -> Result<bool> {
        let joint = self.marginal(vars)?;
        let singles: Vec<BTreeMap<Vec<u32>, BigRational>> = vars
            .elements()
            .map(|v| self.marginal(Subset::singleton(v)))
            .collect::<Result<_>>()?;
        let product_support: usize = singles.iter().map(BTreeMap::len).product();
        if product_support != joint.len() {
            return Ok(false);
        }
        Ok(joint.iter().all(|(o, p)| {
            let prod = o
                .iter()
                .zip(&singles)
                .fold(BigRational::one(), |acc, (&x, m)| acc * &m[&vec![x]]);
            *p == prod
        }))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UniformSupport {
    pub uniform: bool,
    pub support: usize,
}

/// Exact entropy `coeff · log₂(base)`, kept with the smallest possible base.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EntropyValue {
    coeff: BigRational,
    base: u64,
}

/// Smallest `b` with `b^e = k`, and that `e`.
fn minimal_root(k: u64) -> (u64, u32) {
    let max_exp = 63 - k.leading_zeros();
    for e in (2..=max_exp).rev() {
        let guess = (k as f64).powf(1.0 / e as f64).round() as u64;
        for b in guess.saturating_sub(1).max(2)..=guess + 1 {
            if b.checked_pow(e) == Some(k) {
                return (b, e);
            }
        }
    }
    (k, 1)
}

impl EntropyValue {
    pub fn new(coeff: BigRational, base: u64) -> Result<Self> {
        if base < 2 {
            return Err(Error::Precondition(format!("logarithm base {base} < 2")));
        }
        if coeff.is_zero() {
            return Ok(EntropyValue::zero());
        }
        let (b, e) = minimal_root(base);
        Ok(EntropyValue {
            coeff: coeff * BigRational::from_integer(e.into()),
            base: b,
        })
    }

    pub fn zero() -> Self {
        EntropyValue {
            coeff: BigRational::zero(),
            base: 2,
        }
    }

    /// `bits` bits, i.e. `bits · log₂2`.
    pub fn bits(bits: u64) -> Self {
        EntropyValue::new(BigRational::from_integer(bits.into()), 2).expect("base 2")
    }

    /// `count · log₂base`.
    pub fn log2_multiple(count: u64, base: u64) -> Result<Self> {
        EntropyValue::new(BigRational::from_integer(count.into()), base)
    }

    /// Entropy of a uniform distribution on `size` outcomes.
    pub fn log2_of(size: u128) -> Self {
        match u64::try_from(size) {
            Ok(0 | 1) => EntropyValue::zero(),
            Ok(s) => EntropyValue::new(BigRational::one(), s).expect("size ≥ 2"),
            Err(_) => panic!("support size {size} does not fit in u64"),
        }
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// The coefficient `q` with `self = q · log₂k`, if one exists.
    pub fn coeff_in_base(&self, k: u64) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        let (b, e) = minimal_root(k);
        (k >= 2 && b == self.base).then(|| &self.coeff / BigRational::from_integer(e.into()))
    }

    pub fn to_f64(&self) -> f64 {
        self.coeff.to_f64().unwrap_or(f64::NAN) * (self.base as f64).log2()
    }
}

impl fmt::Display for EntropyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.base == 2 || self.is_zero() {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}*log2({})", self.coeff, self.base)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn uniform(name: &str, k: i64) -> (String, Vec<BigRational>) {
        (name.into(), vec![q(1, k); k as usize])
    }

    #[test]
    fn entropy_examples() {
        let ber = JointDistribution::independent(vec![uniform("X", 2)]).unwrap();
        assert_eq!(ber.entropy(Subset::full(1)).unwrap(), 1.0);
        let point = JointDistribution::independent(vec![("X".into(), vec![q(1, 1)])]).unwrap();
        assert_eq!(point.entropy(Subset::full(1)).unwrap(), 0.0);
        let tri = JointDistribution::independent(vec![uniform("X", 3)]).unwrap();
        assert!((tri.entropy(Subset::full(1)).unwrap() - 1.584962500721156).abs() < 1e-12);
        assert!(ber.entropy(Subset::EMPTY).is_err());
    }

    fn duplicated_bit() -> JointDistribution {
        let pmf = [(vec![0, 0], q(1, 2)), (vec![1, 1], q(1, 2))]
            .into_iter()
            .collect();
        JointDistribution::new(vec![Variable::new("X", 2), Variable::new("X'", 2)], pmf).unwrap()
    }

    #[test]
    fn conditional_examples() {
        let d = duplicated_bit();
        let x = Subset::singleton(0);
        let y = Subset::singleton(1);
        assert_eq!(d.conditional_entropy(x, y).unwrap(), 0.0);
        let indep = JointDistribution::independent(vec![uniform("X", 2), uniform("Y", 2)]).unwrap();
        assert_eq!(indep.conditional_entropy(x, y).unwrap(), 1.0);
        assert!(indep.conditional_entropy(x, x).is_err());
    }

    #[test]
    fn entropy_vector_examples() {
        let indep = JointDistribution::independent(vec![uniform("X", 2), uniform("Y", 2)]).unwrap();
        assert_eq!(indep.entropy_vector().unwrap().values(), &[1.0, 1.0, 2.0]);
        assert_eq!(
            duplicated_bit().entropy_vector().unwrap().values(),
            &[1.0, 1.0, 1.0]
        );
    }

    #[test]
    fn uniform_support_examples() {
        let u4 = JointDistribution::independent(vec![uniform("X", 4)]).unwrap();
        assert_eq!(
            u4.is_uniform_on_support(0).unwrap(),
            UniformSupport {
                uniform: true,
                support: 4
            }
        );
        let skew =
            JointDistribution::independent(vec![("X".into(), vec![q(1, 2), q(1, 4), q(1, 4)])])
                .unwrap();
        assert!(!skew.is_uniform_on_support(0).unwrap().uniform);
    }

    #[test]
    fn validation() {
        let vars = vec![Variable::new("X", 2)];
        let half: BTreeMap<_, _> = [(vec![0], q(1, 2))].into_iter().collect();
        assert!(JointDistribution::new(vars.clone(), half).is_err());
        let range: BTreeMap<_, _> = [(vec![2], q(1, 1))].into_iter().collect();
        assert!(JointDistribution::new(vars.clone(), range).is_err());
        let arity: BTreeMap<_, _> = [(vec![0, 0], q(1, 1))].into_iter().collect();
        assert!(JointDistribution::new(vars, arity).is_err());
    }

    #[test]
    fn wide_alphabets_skip_packing() {
        let vars: Vec<Variable> = (0..3)
            .map(|i| Variable::new(format!("X{i}"), u32::MAX))
            .collect();
        let pmf = [
            (vec![u32::MAX - 1, 0, 5], q(1, 2)),
            (vec![0, 0, 5], q(1, 2)),
        ]
        .into_iter()
        .collect();
        let d = JointDistribution::new(vars, pmf).unwrap();
        assert!(d.packed.is_none());
        assert_eq!(
            d.entropy_vector().unwrap().values(),
            &[1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0]
        );
    }

    #[test]
    fn factorization() {
        let indep = JointDistribution::independent(vec![uniform("X", 2), uniform("Y", 3)]).unwrap();
        assert!(indep.factorizes(Subset::full(2)).unwrap());
        assert!(!duplicated_bit().factorizes(Subset::full(2)).unwrap());
    }

    #[test]
    fn entropy_value_canonical() {
        let four = EntropyValue::new(q(1, 1), 4).unwrap();
        assert_eq!(four, EntropyValue::bits(2));
        assert_eq!(four.coeff_in_base(4), Some(q(1, 1)));
        assert_eq!(four.coeff_in_base(2), Some(q(2, 1)));
        assert_eq!(four.coeff_in_base(3), None);
        let nine = EntropyValue::new(q(1, 2), 9).unwrap();
        assert_eq!((nine.coeff(), nine.base()), (&q(1, 1), 3));
        assert_eq!(nine.to_string(), "1*log2(3)");
        assert_eq!(EntropyValue::bits(3).to_string(), "3");
        assert_eq!(EntropyValue::new(q(0, 1), 7).unwrap(), EntropyValue::zero());
        assert!(EntropyValue::new(q(1, 1), 1).is_err());
        assert_eq!(minimal_root(1 << 40), (2, 40));
        assert_eq!(minimal_root(216), (6, 3));
        assert_eq!(minimal_root(12), (12, 1));
        assert!((EntropyValue::log2_of(3).to_f64() - 3f64.log2()).abs() < 1e-15);
    }
}
