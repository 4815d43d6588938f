use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Index of a generator inside a [`GenTable`].
pub type Var = u16;

/// A polynomial generator with its weight. A generator of weight `n`
/// sits in topological degree `2n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub tex: String,
    pub weight: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, tex: impl Into<String>, weight: u32) -> Self {
        Self { name: name.into(), tex: tex.into(), weight }
    }
}

/// An ordered list of weighted generators. Polynomials only combine when
/// they share a table.
#[derive(Clone, Debug)]
pub struct GenTable {
    gens: Vec<Generator>,
    by_name: HashMap<String, Var>,
}

impl PartialEq for GenTable {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens
    }
}

impl Eq for GenTable {}

impl GenTable {
    /// Builds a table. Panics on a duplicate name or a zero weight, both of
    /// which are programming errors in the table constructors below.
    pub fn new(gens: Vec<Generator>) -> Arc<Self> {
        assert!(gens.len() < Var::MAX as usize, "generator table too large");
        let mut by_name = HashMap::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            assert!(g.weight > 0, "generator {} has weight zero", g.name);
            let prev = by_name.insert(g.name.clone(), i as Var);
            assert!(prev.is_none(), "duplicate generator {}", g.name);
        }
        Arc::new(Self { gens, by_name })
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gen(&self, v: Var) -> &Generator {
        &self.gens[v as usize]
    }

    pub fn weight(&self, v: Var) -> u32 {
        self.gens[v as usize].weight
    }

    pub fn name(&self, v: Var) -> &str {
        &self.gens[v as usize].name
    }

    pub fn lookup(&self, name: &str) -> Option<Var> {
        self.by_name.get(name).copied()
    }

    pub fn generators(&self) -> impl Iterator<Item = (Var, &Generator)> {
        self.gens.iter().enumerate().map(|(i, g)| (i as Var, g))
    }
}

impl fmt::Display for GenTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> =
            self.gens.iter().map(|g| format!("{}[{}]", g.name, g.weight)).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

/// One family of indexed generators, e.g. `x_1, x_2, ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Family {
    pub name: &'static str,
    pub tex: &'static str,
}

impl Family {
    pub const fn new(name: &'static str, tex: &'static str) -> Self {
        Self { name, tex }
    }

    pub fn var_name(&self, n: usize) -> String {
        format!("{}_{}", self.name, n)
    }

    fn tex_name(&self, n: usize) -> String {
        if n < 10 {
            format!("{}_{}", self.tex, n)
        } else {
            format!("{}_{{{}}}", self.tex, n)
        }
    }

    /// Generators `name_1 .. name_count` with the given weight function.
    pub fn generators(&self, count: usize, weight: impl Fn(usize) -> u32) -> Vec<Generator> {
        (1..=count)
            .map(|n| Generator::new(self.var_name(n), self.tex_name(n), weight(n)))
            .collect()
    }
}

pub const M: Family = Family::new("m", "m");
pub const X: Family = Family::new("x", "x");
pub const B: Family = Family::new("b", "b");
pub const B_OUTER: Family = Family::new("b'", "b'");
pub const C: Family = Family::new("c", "c");
pub const L: Family = Family::new("l", "\\ell");
pub const V: Family = Family::new("v", "v");
pub const T: Family = Family::new("t", "t");

/// Weight of the `n`-th p-typical generator, `p^n - 1`.
pub fn typical_weight(p: u32, n: usize) -> u32 {
    p.checked_pow(n as u32).expect("p-typical weight overflow") - 1
}

/// Weight of the `n`-th generator of a family.
pub type WeightFn<'a> = &'a dyn Fn(usize) -> u32;

/// Tables built from whole families, listed family by family.
pub fn table_of(families: &[(Family, usize, WeightFn)]) -> Arc<GenTable> {
    let mut gens = Vec::new();
    for (fam, count, w) in families {
        gens.extend(fam.generators(*count, w));
    }
    GenTable::new(gens)
}

/// A single family in weight order `n ↦ n`.
pub fn plain_table(fam: Family, count: usize) -> Arc<GenTable> {
    GenTable::new(fam.generators(count, |n| n as u32))
}
