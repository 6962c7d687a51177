use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::{free_reduce, ColorId, LabelElement, LabelOracle, Letter};
use crate::error::{Error, Result};

/// Largest finite group we are willing to enumerate for normal forms.
const MAX_FINITE_ORDER: usize = 500_000;

/// Which built-in action an oracle realizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleKind {
    /// The trivial group on `points` colors; every generator is the identity.
    Trivial { points: usize },
    /// `Z/n` rotating `{0, …, n-1}`.
    CyclicRotation(usize),
    /// The full symmetric group on `{0, …, n-1}`.
    Sym(usize),
    /// The permutation group generated by explicit permutations.
    FiniteTable { degree: usize },
    /// `Z` acting on the integers by translation.
    TranslationZ,
    /// `Q × H` acting through `Q`; `H` is the kernel factor.
    ProductKernel { base: Box<OracleKind>, kernel: KernelKind },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelKind {
    Free { rank: usize },
    FreeAbelian { rank: usize },
    /// A finite group given by its Cayley table (element 0 is the identity).
    Finite { order: usize },
}

impl fmt::Display for OracleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleKind::Trivial { points } => write!(f, "trivial({points})"),
            OracleKind::CyclicRotation(n) => write!(f, "cyclic_rotation({n})"),
            OracleKind::Sym(n) => write!(f, "sym({n})"),
            OracleKind::FiniteTable { degree } => write!(f, "finite_table({degree})"),
            OracleKind::TranslationZ => write!(f, "translation_Z"),
            OracleKind::ProductKernel { base, kernel } => {
                let k = match kernel {
                    KernelKind::Free { rank } => format!("free({rank})"),
                    KernelKind::FreeAbelian { rank } => format!("free_abelian({rank})"),
                    KernelKind::Finite { order } => format!("finite({order})"),
                };
                write!(f, "product_kernel({base}, {k})")
            }
        }
    }
}

type Perm = Vec<u32>;

fn compose(p: &[u32], q: &[u32]) -> Perm {
    // (p ∘ q)[s] = p[q[s]]
    q.iter().map(|&s| p[s as usize]).collect()
}

fn invert(p: &[u32]) -> Perm {
    let mut out = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[j as usize] = i as u32;
    }
    out
}

/// A finite permutation group with shortlex-minimal positive words as
/// normal forms.
#[derive(Clone, Debug)]
struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    inverses: Vec<Perm>,
    canonical: HashMap<Perm, Vec<usize>>,
}

impl PermGroup {
    fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        for g in &generators {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x as usize >= degree || std::mem::replace(&mut seen[x as usize], true)) {
                return Err(Error::Config(format!("not a permutation of {degree} points: {g:?}")));
            }
        }
        let inverses = generators.iter().map(|g| invert(g)).collect();
        let identity: Perm = (0..degree as u32).collect();
        let mut canonical = HashMap::new();
        canonical.insert(identity.clone(), Vec::new());
        let mut queue = VecDeque::from([identity]);
        while let Some(p) = queue.pop_front() {
            let word = canonical[&p].clone();
            for (i, g) in generators.iter().enumerate() {
                let q = compose(&p, g);
                if !canonical.contains_key(&q) {
                    if canonical.len() >= MAX_FINITE_ORDER {
                        return Err(Error::Unsupported(format!(
                            "finite group larger than {MAX_FINITE_ORDER} elements"
                        )));
                    }
                    let mut w = word.clone();
                    w.push(i);
                    canonical.insert(q.clone(), w);
                    queue.push_back(q);
                }
            }
        }
        Ok(PermGroup { degree, generators, inverses, canonical })
    }

    fn evaluate(&self, letters: &[Letter], offset: usize) -> Perm {
        let mut p: Perm = (0..self.degree as u32).collect();
        for l in letters {
            let i = l.generator - offset;
            let g = if l.inverse { &self.inverses[i] } else { &self.generators[i] };
            p = compose(&p, g);
        }
        p
    }

    fn order(&self) -> usize {
        self.canonical.len()
    }
}

#[derive(Clone, Debug)]
enum Base {
    Finite(PermGroup),
    Translation,
}

#[derive(Clone, Debug)]
struct FiniteKernel {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    /// Generator `j` of the factor is element `j + 1`.
    canonical: Vec<Vec<usize>>,
}

impl FiniteKernel {
    fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let m = table.len();
        if m == 0 || table.iter().any(|row| row.len() != m || row.iter().any(|&x| x >= m)) {
            return Err(Error::Config("kernel table must be a square table over 0..m".into()));
        }
        if (0..m).any(|x| table[0][x] != x || table[x][0] != x) {
            return Err(Error::Config("kernel table: element 0 must be the identity".into()));
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Config("kernel table is not associative".into()));
                    }
                }
            }
        }
        let mut inverse = vec![usize::MAX; m];
        for a in 0..m {
            inverse[a] = (0..m)
                .find(|&b| table[a][b] == 0)
                .ok_or_else(|| Error::Config(format!("kernel element {a} has no inverse")))?;
        }
        let mut canonical: Vec<Option<Vec<usize>>> = vec![None; m];
        canonical[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let word = canonical[x].clone().unwrap();
            for j in 0..m.saturating_sub(1) {
                let y = table[x][j + 1];
                if canonical[y].is_none() {
                    let mut w = word.clone();
                    w.push(j);
                    canonical[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        let canonical = canonical.into_iter().map(|w| w.expect("generated by all elements")).collect();
        Ok(FiniteKernel { table, inverse, canonical })
    }
}

#[derive(Clone, Debug)]
enum KernelFactor {
    Free { rank: usize },
    FreeAbelian { rank: usize },
    Finite(FiniteKernel),
}

impl KernelFactor {
    fn generator_count(&self) -> usize {
        match self {
            KernelFactor::Free { rank } | KernelFactor::FreeAbelian { rank } => *rank,
            KernelFactor::Finite(k) => k.table.len() - 1,
        }
    }

    fn kind(&self) -> KernelKind {
        match self {
            KernelFactor::Free { rank } => KernelKind::Free { rank: *rank },
            KernelFactor::FreeAbelian { rank } => KernelKind::FreeAbelian { rank: *rank },
            KernelFactor::Finite(k) => KernelKind::Finite { order: k.table.len() },
        }
    }

    fn normalize(&self, letters: &[Letter], offset: usize) -> Vec<Letter> {
        match self {
            KernelFactor::Free { .. } => free_reduce(letters),
            KernelFactor::FreeAbelian { rank } => {
                let mut exps = vec![0i64; *rank];
                for l in letters {
                    exps[l.generator - offset] += if l.inverse { -1 } else { 1 };
                }
                exps.iter()
                    .enumerate()
                    .flat_map(|(j, &e)| {
                        let l = Letter { generator: j + offset, inverse: e < 0 };
                        std::iter::repeat_n(l, e.unsigned_abs() as usize)
                    })
                    .collect()
            }
            KernelFactor::Finite(k) => {
                let mut x = 0;
                for l in letters {
                    let g = l.generator - offset + 1;
                    let g = if l.inverse { k.inverse[g] } else { g };
                    x = k.table[x][g];
                }
                k.canonical[x].iter().map(|&j| Letter::new(j + offset)).collect()
            }
        }
    }
}

/// The built-in label-group oracles.
#[derive(Clone, Debug)]
pub struct LabelGroup {
    kind: OracleKind,
    base: Base,
    base_generators: usize,
    kernel: Option<KernelFactor>,
    names: Vec<String>,
    color_names: Option<Vec<String>>,
}

impl LabelGroup {
    fn from_base(kind: OracleKind, base: Base, names: Vec<String>) -> Self {
        LabelGroup { kind, base, base_generators: names.len(), kernel: None, names, color_names: None }
    }

    /// The trivial group acting on `points` colors. Each named generator
    /// is a name for the identity.
    pub fn trivial(points: usize, generator_names: &[&str]) -> Result<Self> {
        if points == 0 {
            return Err(Error::Config("the color set must be non-empty".into()));
        }
        let gens = vec![(0..points as u32).collect(); generator_names.len()];
        let base = Base::Finite(PermGroup::new(points, gens)?);
        let names = generator_names.iter().map(|s| s.to_string()).collect();
        Ok(Self::from_base(OracleKind::Trivial { points }, base, names))
    }

    /// `Z/n` rotating `{0, …, n-1}` by one step; generator `r`.
    pub fn cyclic_rotation(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config("cyclic_rotation needs n ≥ 1".into()));
        }
        let r: Perm = (0..n as u32).map(|s| (s + 1) % n as u32).collect();
        let base = Base::Finite(PermGroup::new(n, vec![r])?);
        Ok(Self::from_base(OracleKind::CyclicRotation(n), base, vec!["r".into()]))
    }

    /// The symmetric group on `{0, …, n-1}`, generated by the transposition
    /// `(0 1)` (named `s`) and, for `n ≥ 3`, the cycle `0→1→…→n-1→0` (`c`).
    pub fn sym(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config("sym needs n ≥ 1".into()));
        }
        let mut gens = Vec::new();
        let mut names = Vec::new();
        if n >= 2 {
            let mut t: Perm = (0..n as u32).collect();
            t.swap(0, 1);
            gens.push(t);
            names.push("s".to_string());
        }
        if n >= 3 {
            gens.push((0..n as u32).map(|s| (s + 1) % n as u32).collect());
            names.push("c".to_string());
        }
        let base = Base::Finite(PermGroup::new(n, gens)?);
        Ok(Self::from_base(OracleKind::Sym(n), base, names))
    }

    /// The permutation group on `degree` points generated by `generators`
    /// (each a list of images).
    pub fn finite_table(degree: usize, generators: Vec<Vec<usize>>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Config("the color set must be non-empty".into()));
        }
        let names = (0..generators.len()).map(|i| format!("g{i}")).collect();
        let gens = generators.into_iter().map(|g| g.into_iter().map(|x| x as u32).collect()).collect();
        let base = Base::Finite(PermGroup::new(degree, gens)?);
        Ok(Self::from_base(OracleKind::FiniteTable { degree }, base, names))
    }

    /// `Z` acting on the integers, generator `t` translating by +1.
    pub fn translation_z() -> Self {
        Self::from_base(OracleKind::TranslationZ, Base::Translation, vec!["t".into()])
    }

    /// `base × H` acting through `base`.
    pub fn product_kernel(base: LabelGroup, kernel: KernelSpec) -> Result<Self> {
        if base.kernel.is_some() {
            return Err(Error::Config("product_kernel base must not itself have a kernel factor".into()));
        }
        let factor = match kernel {
            KernelSpec::Free { rank } => KernelFactor::Free { rank },
            KernelSpec::FreeAbelian { rank } => KernelFactor::FreeAbelian { rank },
            KernelSpec::Finite { table } => KernelFactor::Finite(FiniteKernel::new(table)?),
        };
        let mut names = base.names.clone();
        let count = factor.generator_count();
        let default: Vec<String> = if count == 1 {
            vec!["t".to_string()]
        } else {
            (0..count).map(|j| format!("k{j}")).collect()
        };
        for name in default {
            let mut candidate = name.clone();
            while names.contains(&candidate) {
                candidate.push('_');
            }
            names.push(candidate);
        }
        Ok(LabelGroup {
            kind: OracleKind::ProductKernel { base: Box::new(base.kind.clone()), kernel: factor.kind() },
            base: base.base,
            base_generators: base.base_generators,
            kernel: Some(factor),
            names,
            color_names: base.color_names,
        })
    }

    /// Renames all generators (base generators first, then kernel ones).
    pub fn with_generator_names<S: AsRef<str>>(mut self, names: &[S]) -> Result<Self> {
        if names.len() != self.names.len() {
            return Err(Error::Config(format!(
                "{} generator names given, {} expected",
                names.len(),
                self.names.len()
            )));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) || n == "id" {
                return Err(Error::Config(format!("generator name `{n}` is not an identifier")));
            }
            if names[..i].contains(n) {
                return Err(Error::Config(format!("duplicate generator name `{n}`")));
            }
        }
        self.names = names;
        Ok(self)
    }

    /// Names the colors of a finite color set.
    pub fn with_color_names<S: AsRef<str>>(mut self, names: &[S]) -> Result<Self> {
        let degree = match &self.base {
            Base::Finite(g) => g.degree,
            Base::Translation => {
                return Err(Error::Config("colors of translation_Z are integers and cannot be renamed".into()))
            }
        };
        if names.len() != degree {
            return Err(Error::Config(format!("{} color names given, {degree} expected", names.len())));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            let numeric_elsewhere = n.parse::<usize>().map(|v| v != i).unwrap_or(false);
            if !(is_identifier(n) || n.chars().all(|c| c.is_ascii_digit())) || numeric_elsewhere {
                return Err(Error::Config(format!("bad color name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::Config(format!("duplicate color name `{n}`")));
            }
        }
        self.color_names = Some(names);
        Ok(self)
    }

    pub fn kind(&self) -> &OracleKind {
        &self.kind
    }

    /// Number of generators acting through the base (the rest lie in the
    /// kernel factor).
    pub fn base_generator_count(&self) -> usize {
        self.base_generators
    }

    /// Order of the group when finite.
    pub fn finite_order(&self) -> Option<usize> {
        let base = match &self.base {
            Base::Finite(g) => g.order(),
            Base::Translation => return None,
        };
        match &self.kernel {
            None => Some(base),
            Some(KernelFactor::Finite(k)) => Some(base * k.table.len()),
            Some(_) => None,
        }
    }

    fn check_letters(&self, word: &LabelElement) -> Result<()> {
        match word.letters().iter().find(|l| l.generator >= self.names.len()) {
            Some(l) => Err(Error::GeneratorIndex(l.generator)),
            None => Ok(()),
        }
    }

    fn check_color(&self, s: ColorId) -> Result<()> {
        if self.contains_color(s) {
            Ok(())
        } else {
            Err(Error::ColorOutOfRange(s))
        }
    }

    fn base_letters(&self, word: &LabelElement) -> Vec<Letter> {
        word.letters().iter().copied().filter(|l| l.generator < self.base_generators).collect()
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Kernel factor specification for [`LabelGroup::product_kernel`].
#[derive(Clone, Debug)]
pub enum KernelSpec {
    Free { rank: usize },
    FreeAbelian { rank: usize },
    Finite { table: Vec<Vec<usize>> },
}

impl LabelOracle for LabelGroup {
    fn generator_count(&self) -> usize {
        self.names.len()
    }

    fn generator_name(&self, index: usize) -> &str {
        &self.names[index]
    }

    fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn normalize(&self, word: &LabelElement) -> Result<LabelElement> {
        self.check_letters(word)?;
        let (base, kernel): (Vec<Letter>, Vec<Letter>) =
            word.letters().iter().partition(|l| l.generator < self.base_generators);
        let mut out = match &self.base {
            Base::Finite(g) => {
                let p = g.evaluate(&base, 0);
                g.canonical[&p].iter().map(|&i| Letter::new(i)).collect::<Vec<_>>()
            }
            Base::Translation => {
                let e: i64 = base.iter().map(|l| if l.inverse { -1 } else { 1 }).sum();
                let l = Letter { generator: 0, inverse: e < 0 };
                vec![l; e.unsigned_abs() as usize]
            }
        };
        if let Some(k) = &self.kernel {
            out.extend(k.normalize(&kernel, self.base_generators));
        }
        Ok(LabelElement::from_letters(out))
    }

    fn act(&self, g: &LabelElement, s: ColorId) -> Result<ColorId> {
        self.check_letters(g)?;
        self.check_color(s)?;
        let base = self.base_letters(g);
        Ok(match &self.base {
            Base::Finite(group) => ColorId(group.evaluate(&base, 0)[s.0 as usize] as i64),
            Base::Translation => ColorId(s.0 + base.iter().map(|l| if l.inverse { -1 } else { 1 }).sum::<i64>()),
        })
    }

    fn acts_trivially(&self, g: &LabelElement) -> Result<bool> {
        self.check_letters(g)?;
        let base = self.base_letters(g);
        Ok(match &self.base {
            Base::Finite(group) => {
                let p = group.evaluate(&base, 0);
                p.iter().enumerate().all(|(i, &x)| i == x as usize)
            }
            Base::Translation => base.iter().map(|l| if l.inverse { -1i64 } else { 1 }).sum::<i64>() == 0,
        })
    }

    fn colors(&self) -> Option<Vec<ColorId>> {
        match &self.base {
            Base::Finite(g) => Some((0..g.degree as i64).map(ColorId).collect()),
            Base::Translation => None,
        }
    }

    fn contains_color(&self, s: ColorId) -> bool {
        match &self.base {
            Base::Finite(g) => s.0 >= 0 && (s.0 as usize) < g.degree,
            Base::Translation => true,
        }
    }

    fn color_name(&self, s: ColorId) -> String {
        match &self.color_names {
            Some(names) if s.0 >= 0 && (s.0 as usize) < names.len() => names[s.0 as usize].clone(),
            _ => s.0.to_string(),
        }
    }

    fn parse_color(&self, text: &str) -> Result<ColorId> {
        if let Some(names) = &self.color_names {
            if let Some(i) = names.iter().position(|n| n == text) {
                return Ok(ColorId(i as i64));
            }
        }
        let s = text.parse::<i64>().map(ColorId).map_err(|_| Error::UnknownColor(text.to_string()))?;
        if self.contains_color(s) {
            Ok(s)
        } else {
            Err(Error::UnknownColor(text.to_string()))
        }
    }

    fn is_finite_group(&self) -> bool {
        self.finite_order().is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::{format_word, parse_word};

    fn word(o: &LabelGroup, s: &str) -> LabelElement {
        parse_word(o, s).unwrap()
    }

    fn raw(o: &LabelGroup, s: &str) -> LabelElement {
        let letters = s
            .split_whitespace()
            .map(|t| match t.strip_suffix("^-1") {
                Some(n) => Letter { generator: o.generator_index(n).unwrap(), inverse: true },
                None => Letter::new(o.generator_index(t).unwrap()),
            })
            .collect();
        LabelElement::from_letters(letters)
    }

    fn free_product_kernel() -> LabelGroup {
        LabelGroup::product_kernel(LabelGroup::sym(2).unwrap(), KernelSpec::Free { rank: 1 })
            .unwrap()
            .with_generator_names(&["s", "t"])
            .unwrap()
    }

    #[test]
    fn normalize_examples() {
        let trivial = LabelGroup::trivial(2, &["a"]).unwrap();
        assert!(trivial.normalize(&raw(&trivial, "a a^-1")).unwrap().is_empty());

        let c3 = LabelGroup::cyclic_rotation(3).unwrap();
        assert!(c3.normalize(&raw(&c3, "r r r")).unwrap().is_empty());

        let pk = free_product_kernel();
        let w = pk.normalize(&raw(&pk, "t s t s^-1")).unwrap();
        assert_eq!(format_word(&pk, &w), "t t");
    }

    #[test]
    fn multiply_and_inverse_examples() {
        let c4 = LabelGroup::cyclic_rotation(4).unwrap();
        assert!(c4.multiply(&word(&c4, "r r"), &word(&c4, "r r")).unwrap().is_empty());

        let pk = free_product_kernel();
        assert!(pk.multiply(&word(&pk, "t"), &word(&pk, "t^-1")).unwrap().is_empty());
        let t = word(&pk, "t");
        assert_eq!(pk.multiply(&LabelElement::identity(), &t).unwrap(), t);

        let c3 = LabelGroup::cyclic_rotation(3).unwrap();
        assert_eq!(format_word(&c3, &c3.inverse(&word(&c3, "r")).unwrap()), "r r");

        let free = LabelGroup::product_kernel(LabelGroup::trivial(1, &[]).unwrap(), KernelSpec::Free { rank: 2 })
            .unwrap()
            .with_generator_names(&["a", "b"])
            .unwrap();
        let inv = free.inverse(&word(&free, "a b")).unwrap();
        assert_eq!(format_word(&free, &inv), "b^-1 a^-1");
        assert!(free.inverse(&LabelElement::identity()).unwrap().is_empty());
    }

    #[test]
    fn act_examples() {
        let c3 = LabelGroup::cyclic_rotation(3).unwrap();
        assert_eq!(c3.act(&word(&c3, "r"), ColorId(2)).unwrap(), ColorId(0));
        assert_eq!(c3.act(&LabelElement::identity(), ColorId(1)).unwrap(), ColorId(1));
        let z = LabelGroup::translation_z();
        assert_eq!(z.act(&word(&z, "t"), ColorId(5)).unwrap(), ColorId(6));
        assert!(matches!(c3.act(&LabelElement::identity(), ColorId(3)), Err(Error::ColorOutOfRange(_))));
    }

    #[test]
    fn kernel_membership_examples() {
        let pk = free_product_kernel();
        assert!(pk.acts_trivially(&word(&pk, "t")).unwrap());
        assert!(!pk.acts_trivially(&word(&pk, "s")).unwrap());
        assert!(pk.acts_trivially(&LabelElement::identity()).unwrap());
        let c3 = LabelGroup::cyclic_rotation(3).unwrap();
        assert!(!c3.acts_trivially(&word(&c3, "r")).unwrap());
        let z = LabelGroup::translation_z();
        assert!(z.acts_trivially(&word(&z, "t t^-1")).unwrap());
    }

    #[test]
    fn unknown_generator_is_an_error() {
        let c3 = LabelGroup::cyclic_rotation(3).unwrap();
        assert!(matches!(parse_word(&c3, "q"), Err(Error::UnknownGenerator(_))));
        let bad = LabelElement::generator(7);
        assert!(matches!(c3.normalize(&bad), Err(Error::GeneratorIndex(7))));
    }

    #[test]
    fn finite_kernel_and_free_abelian_normal_forms() {
        let z2 = vec![vec![0, 1], vec![1, 0]];
        let pk = LabelGroup::product_kernel(LabelGroup::cyclic_rotation(3).unwrap(), KernelSpec::Finite { table: z2 })
            .unwrap();
        assert_eq!(pk.finite_order(), Some(6));
        let w = word(&pk, "t r t r^-1");
        assert!(w.is_empty());

        let ab = LabelGroup::product_kernel(LabelGroup::trivial(2, &[]).unwrap(), KernelSpec::FreeAbelian { rank: 2 })
            .unwrap()
            .with_generator_names(&["x", "y"])
            .unwrap();
        assert_eq!(format_word(&ab, &word(&ab, "y x y^-1 x")), "x x");
    }

    #[test]
    fn sym3_has_six_elements() {
        let s3 = LabelGroup::sym(3).unwrap();
        assert_eq!(s3.finite_order(), Some(6));
    }
}
