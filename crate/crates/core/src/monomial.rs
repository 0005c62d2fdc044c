//! Monomials as exponent vectors, and monomial ideals with an ordered list of
//! generators.

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonomialError {
    #[error("monomials live in different rings ({0} vs {1} variables)")]
    AmbientMismatch(usize, usize),
    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { divisor: String, dividend: String },
    #[error("exponent overflow")]
    Overflow,
    #[error("an ideal needs at least one generator")]
    NoGenerators,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A monomial `x^a` stored as its exponent vector.
///
/// The all-zero vector is the monomial 1, the lcm of the empty set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exponents: vec![0; nvars],
        }
    }

    /// The single variable `x_i` in a ring with `nvars` variables.
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut exponents = vec![0; nvars];
        exponents[i] = 1;
        Monomial { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.exponents.iter().map(|&e| e as u64).sum()
    }

    fn check_ambient(&self, other: &Monomial) -> Result<(), MonomialError> {
        if self.nvars() != other.nvars() {
            return Err(MonomialError::AmbientMismatch(self.nvars(), other.nvars()));
        }
        Ok(())
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial, MonomialError> {
        self.check_ambient(other)?;
        Ok(Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        })
    }

    pub fn gcd(&self, other: &Monomial) -> Result<Monomial, MonomialError> {
        self.check_ambient(other)?;
        Ok(Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        })
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> Result<bool, MonomialError> {
        self.check_ambient(other)?;
        Ok(self
            .exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b))
    }

    /// `self / divisor`, the monomial factor forced on a homogeneous map
    /// from degree `divisor` to degree `self`.
    pub fn quotient(&self, divisor: &Monomial) -> Result<Monomial, MonomialError> {
        self.check_ambient(divisor)?;
        let exponents = self
            .exponents
            .iter()
            .zip(&divisor.exponents)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| MonomialError::NotDivisible {
                divisor: divisor.to_string(),
                dividend: self.to_string(),
            })?;
        Ok(Monomial { exponents })
    }

    pub fn product(&self, other: &Monomial) -> Result<Monomial, MonomialError> {
        self.check_ambient(other)?;
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(&a, &b)| a.checked_add(b))
            .collect::<Option<Vec<_>>>()
            .ok_or(MonomialError::Overflow)?;
        Ok(Monomial { exponents })
    }

    /// Renders with variable names, e.g. `a^2*b`; the unit monomial is `1`.
    pub fn format_with(&self, vars: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let factors: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                let name = vars
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| format!("x{}", i + 1));
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        factors.join("*")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_with(&[]))
    }
}

/// A monomial ideal given by an ordered list of generators over named
/// variables. The generator order fixes the atom numbering of the
/// lcm-lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    vars: Vec<String>,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(vars: Vec<String>, generators: Vec<Monomial>) -> Result<Self, MonomialError> {
        if generators.is_empty() {
            return Err(MonomialError::NoGenerators);
        }
        for g in &generators {
            if g.nvars() != vars.len() {
                return Err(MonomialError::AmbientMismatch(vars.len(), g.nvars()));
            }
        }
        Ok(MonomialIdeal { vars, generators })
    }

    /// Builds an ideal from generator strings such as `"a^2*b"` over the
    /// given variable names.
    pub fn from_strs(vars: &[&str], generators: &[&str]) -> Result<Self, MonomialError> {
        let vars: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        let gens = generators
            .iter()
            .enumerate()
            .map(|(k, g)| parse_monomial(g, &vars, k + 1))
            .collect::<Result<Vec<_>, _>>()?;
        MonomialIdeal::new(vars, gens)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        m.format_with(&self.vars)
    }

    /// Drops every generator divisible by another one (keeping the first of
    /// any duplicates). Relative order is preserved and the operation is
    /// idempotent.
    pub fn minimalize_generators(&self) -> MonomialIdeal {
        let gens = &self.generators;
        let keep = |j: usize| {
            !gens.iter().enumerate().any(|(i, g)| {
                i != j && g.divides(&gens[j]).unwrap_or(false) && (g != &gens[j] || i < j)
            })
        };
        MonomialIdeal {
            vars: self.vars.clone(),
            generators: (0..gens.len())
                .filter(|&j| keep(j))
                .map(|j| gens[j].clone())
                .collect(),
        }
    }

    pub fn is_minimally_generated(&self) -> bool {
        self.minimalize_generators().ngens() == self.ngens()
    }

    /// lcm of the generators whose indices are set in `mask`.
    pub fn lcm_of_mask(&self, mask: u64) -> Monomial {
        let mut exps = vec![0u32; self.nvars()];
        for (i, g) in self.generators.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for (e, &ge) in exps.iter_mut().zip(g.exponents()) {
                    *e = (*e).max(ge);
                }
            }
        }
        Monomial::new(exps)
    }

    /// Serializes to the ideal text format read by `FromStr`.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("vars: {}\n", self.vars.join(" "));
        for g in &self.generators {
            out.push_str(&self.format_monomial(g));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| self.format_monomial(g))
            .collect();
        write!(f, "({})", gens.join(", "))
    }
}

/// A random minimally generated ideal with at most `max_gens` generators
/// in at most `max_vars` variables `x1, x2, ...`, exponents at most
/// `max_exp`, and no unit generator.
pub fn random_ideal<R: rand::Rng>(
    rng: &mut R,
    max_gens: usize,
    max_vars: usize,
    max_exp: u32,
) -> MonomialIdeal {
    let nvars = rng.gen_range(1..=max_vars.max(1));
    let ngens = rng.gen_range(1..=max_gens.max(1));
    let vars: Vec<String> = (1..=nvars).map(|i| format!("x{i}")).collect();
    let mut gens = Vec::with_capacity(ngens);
    while gens.len() < ngens {
        let m = Monomial::new(
            (0..nvars)
                .map(|_| rng.gen_range(0..=max_exp.max(1)))
                .collect(),
        );
        if !m.is_one() {
            gens.push(m);
        }
    }
    MonomialIdeal::new(vars, gens)
        .expect("at least one generator")
        .minimalize_generators()
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Parses a `*`-separated product of `var^k` factors. `1` is the unit
/// monomial.
pub fn parse_monomial(text: &str, vars: &[String], line: usize) -> Result<Monomial, MonomialError> {
    let err = |message: String| MonomialError::Parse { line, message };
    let t = text.trim();
    let mut exps = vec![0u32; vars.len()];
    if t == "1" {
        return Ok(Monomial::new(exps));
    }
    if t.is_empty() {
        return Err(err("empty monomial".into()));
    }
    for factor in t.split('*') {
        let factor = factor.trim();
        let (name, power) = match factor.split_once('^') {
            Some((n, k)) => {
                let k: u32 = k
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad exponent in `{factor}`")))?;
                (n.trim(), k)
            }
            None => (factor, 1),
        };
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| err(format!("unknown variable `{name}`")))?;
        exps[idx] = exps[idx]
            .checked_add(power)
            .ok_or_else(|| err("exponent overflow".into()))?;
    }
    Ok(Monomial::new(exps))
}

impl FromStr for MonomialIdeal {
    type Err = MonomialError;

    /// Ideal file format: a `vars: a b c` header line, then one generator
    /// per nonempty line; lines starting with `#` are comments.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(MonomialError::Parse {
            line: 1,
            message: "missing `vars:` header".into(),
        })?;
        let names = header
            .strip_prefix("vars:")
            .ok_or_else(|| MonomialError::Parse {
                line: hline,
                message: "expected `vars:` header".into(),
            })?;
        let vars: Vec<String> = names.split_whitespace().map(str::to_string).collect();
        for (k, v) in vars.iter().enumerate() {
            if !is_identifier(v) || vars[..k].contains(v) {
                return Err(MonomialError::Parse {
                    line: hline,
                    message: format!("bad or repeated variable name `{v}`"),
                });
            }
        }
        let gens = lines
            .map(|(line, l)| parse_monomial(l, &vars, line))
            .collect::<Result<Vec<_>, _>>()?;
        if gens.is_empty() {
            return Err(MonomialError::Parse {
                line: hline + 1,
                message: "no generators".into(),
            });
        }
        MonomialIdeal::new(vars, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ab() -> Vec<String> {
        vec!["a".into(), "b".into(), "c".into()]
    }

    fn m(s: &str) -> Monomial {
        parse_monomial(s, &ab(), 1).unwrap()
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(m("a^2*b").lcm(&m("b^2*c")).unwrap(), m("a^2*b^2*c"));
        assert_eq!(m("a*b*c").lcm(&m("1")).unwrap(), m("a*b*c"));
        assert_eq!(m("a^2").lcm(&m("a*b")).unwrap(), m("a^2*b"));
        assert!(m("a").lcm(&Monomial::one(2)).is_err());
    }

    #[test]
    fn divides_examples() {
        assert!(m("a*b").divides(&m("a^2*b")).unwrap());
        assert!(m("a*b*c").divides(&m("a^2*b*c")).unwrap());
        assert!(!m("a^2*b").divides(&m("a*b^2")).unwrap());
        assert!(m("a").divides(&Monomial::one(2)).is_err());
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(m("a^2*b").quotient(&m("a^2")).unwrap(), m("b"));
        assert_eq!(m("a^2*b^2").quotient(&m("a^2*b")).unwrap(), m("b"));
        assert!(m("a*b").quotient(&m("a*b")).unwrap().is_one());
        assert!(matches!(
            m("a").quotient(&m("b")),
            Err(MonomialError::NotDivisible { .. })
        ));
    }

    #[test]
    fn product_overflow_is_checked() {
        let big = Monomial::new(vec![u32::MAX]);
        assert_eq!(
            big.product(&Monomial::new(vec![1])),
            Err(MonomialError::Overflow)
        );
    }

    #[test]
    fn minimalize_examples() {
        let i = MonomialIdeal::from_strs(&["x", "y"], &["x", "x*y", "y"]).unwrap();
        assert_eq!(i.minimalize_generators().to_string(), "(x, y)");
        let m = MonomialIdeal::from_strs(&["a", "b"], &["a^2", "a*b", "b^2"]).unwrap();
        assert_eq!(m.minimalize_generators(), m);
        let e = MonomialIdeal::from_strs(
            &["a", "b", "c", "d"],
            &["b*d", "c*d^2", "a*c", "c^2*d", "a*b"],
        )
        .unwrap();
        assert_eq!(e.minimalize_generators().ngens(), 5);
        let dup = MonomialIdeal::from_strs(&["x"], &["x", "x"]).unwrap();
        assert_eq!(dup.minimalize_generators().ngens(), 1);
    }

    #[test]
    fn parse_file_format() {
        let text = "# the ideal M\nvars: a b\na^2\n\na*b\nb^2\n";
        let i: MonomialIdeal = text.parse().unwrap();
        assert_eq!(i.to_string(), "(a^2, a*b, b^2)");
        assert_eq!(i.to_file_string().parse::<MonomialIdeal>().unwrap(), i);
        assert!(matches!(
            "".parse::<MonomialIdeal>(),
            Err(MonomialError::Parse { line: 1, .. })
        ));
        let bad = "vars: a b\na^2\nc\n".parse::<MonomialIdeal>();
        assert!(matches!(bad, Err(MonomialError::Parse { line: 3, .. })));
        assert!("vars: a a\na\n".parse::<MonomialIdeal>().is_err());
        assert!("vars: a\n".parse::<MonomialIdeal>().is_err());
    }

    fn small_monomial() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..4, 3).prop_map(Monomial::new)
    }

    proptest! {
        #[test]
        fn lcm_is_divisibility_join(a in small_monomial(), b in small_monomial(), c in small_monomial()) {
            let ab = a.lcm(&b).unwrap();
            prop_assert_eq!(&ab, &b.lcm(&a).unwrap());
            prop_assert_eq!(a.lcm(&a).unwrap(), a.clone());
            prop_assert_eq!(ab.lcm(&c).unwrap(), a.lcm(&b.lcm(&c).unwrap()).unwrap());
            prop_assert!(a.divides(&ab).unwrap() && b.divides(&ab).unwrap());
            // least upper bound, by brute force over a box containing everything
            if a.divides(&c).unwrap() && b.divides(&c).unwrap() {
                prop_assert!(ab.divides(&c).unwrap());
            }
            if a.divides(&b).unwrap() && b.divides(&a).unwrap() {
                prop_assert_eq!(&a, &b);
            }
        }

        #[test]
        fn minimalize_is_idempotent_and_covers(gens in prop::collection::vec(small_monomial(), 1..7)) {
            let vars: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
            let ideal = MonomialIdeal::new(vars, gens).unwrap();
            let min = ideal.minimalize_generators();
            prop_assert!(min.ngens() >= 1);
            prop_assert_eq!(min.minimalize_generators(), min.clone());
            for g in ideal.generators() {
                prop_assert!(min.generators().iter().any(|h| h.divides(g).unwrap()));
            }
        }
    }
}
