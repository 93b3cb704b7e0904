//! Structure constants of the Galilei algebras of `n`-dimensional space.

use std::fmt;

use crate::error::{Error, Result};
use crate::expr::{RatExpr, Symbol};
use crate::liealg::{LieAlgebra, Param};

/// Which operators beyond `P_i, T, J_ij, G_i` the algebra contains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    /// Classical: no extra operators.
    Classical = 1,
    /// Extended: dilation `D`.
    Extended = 2,
    /// Special: `D` and the projective operator `S`.
    Special = 3,
    /// Full: `D`, `S` and `Z`.
    Full = 4,
}

impl Level {
    pub fn from_index(k: u32) -> Option<Level> {
        match k {
            1 => Some(Level::Classical),
            2 => Some(Level::Extended),
            3 => Some(Level::Special),
            4 => Some(Level::Full),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GalileiSpec {
    pub level: Level,
    /// Reduced algebras lack the mass operator `M`.
    pub reduced: bool,
    pub n: usize,
}

impl GalileiSpec {
    pub fn new(level: Level, reduced: bool, n: usize) -> Self {
        GalileiSpec { level, reduced, n }
    }

    /// Parse names like `AG2(1)` or `AbarG3(2)`.
    pub fn parse(name: &str) -> Option<GalileiSpec> {
        let (reduced, rest) = if let Some(r) = name.strip_prefix("AbarG") {
            (true, r)
        } else {
            (false, name.strip_prefix("AG")?)
        };
        let (k, rest) = rest.split_once('(')?;
        let n = rest.strip_suffix(')')?.parse().ok()?;
        let level = Level::from_index(k.parse().ok()?)?;
        (n >= 1).then_some(GalileiSpec { level, reduced, n })
    }

    /// Dimension `n(n-1)/2 + 2n + c` with `c` read off the family.
    pub fn dim(&self) -> usize {
        let extra = self.level as usize + usize::from(!self.reduced);
        self.n * (self.n - 1) / 2 + 2 * self.n + extra
    }

    pub fn latex(&self) -> String {
        let bar = if self.reduced { "\\bar{G}" } else { "G" };
        format!("{{\\rm A{bar}}}_{}({})", self.level as u32, self.n)
    }
}

impl fmt::Display for GalileiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bar = if self.reduced { "bar" } else { "" };
        write!(f, "A{bar}G{}({})", self.level as u32, self.n)
    }
}

struct Labels {
    n: usize,
    p: Vec<usize>,
    t: usize,
    j: Vec<Vec<Option<usize>>>,
    g: Vec<usize>,
    d: Option<usize>,
    s: Option<usize>,
    z: Option<usize>,
    m: Option<usize>,
    names: Vec<String>,
}

impl Labels {
    fn new(spec: &GalileiSpec) -> Labels {
        let n = spec.n;
        let mut names = Vec::new();
        let mut push = |s: String| {
            names.push(s);
            names.len() - 1
        };
        let sub = |base: &str, i: usize| if n == 1 { base.to_string() } else { format!("{base}{i}") };
        let p = (1..=n).map(|i| push(sub("P", i))).collect();
        let t = push("T".into());
        let mut j = vec![vec![None; n]; n];
        for a in 0..n {
            for b in a + 1..n {
                j[a][b] = Some(push(format!("J{}{}", a + 1, b + 1)));
            }
        }
        let g = (1..=n).map(|i| push(sub("G", i))).collect();
        let d = (spec.level >= Level::Extended).then(|| push("D".into()));
        let s = (spec.level >= Level::Special).then(|| push("S".into()));
        let z = (spec.level == Level::Full).then(|| push("Z".into()));
        let m = (!spec.reduced).then(|| push("M".into()));
        Labels { n, p, t, j, g, d, s, z, m, names }
    }

    /// `J_ab` as a signed basis index; `J_aa = 0`.
    fn j(&self, a: usize, b: usize) -> Option<(i64, usize)> {
        use std::cmp::Ordering::*;
        match a.cmp(&b) {
            Less => self.j[a][b].map(|k| (1, k)),
            Greater => self.j[b][a].map(|k| (-1, k)),
            Equal => None,
        }
    }
}

fn delta(a: usize, b: usize) -> i64 {
    i64::from(a == b)
}

/// Accumulates `[x, y] += c * e_k` into an algebra.
fn add(l: &mut LieAlgebra, x: usize, y: usize, k: usize, c: i64) {
    if c != 0 {
        l.add_bracket_term(x, y, k, &RatExpr::int(c));
    }
}

/// Overwrite `[x, y] = c * e_k` where `c` may be symbolic.
fn put(l: &mut LieAlgebra, x: usize, y: usize, k: usize, c: RatExpr) {
    let mut v = vec![RatExpr::zero(); l.dim()];
    v[k] = c;
    l.set_bracket(x, y, v);
}

/// The Galilei algebra with all and only the commutation relations of its
/// family; basis order `P_i, T, J_ij (i<j), G_i, D, S, Z, M`.
pub fn galilei_algebra(spec: GalileiSpec) -> Result<LieAlgebra> {
    if spec.n == 0 {
        return Err(Error::Input("space dimension must be at least 1".into()));
    }
    let lb = Labels::new(&spec);
    let refs: Vec<&str> = lb.names.iter().map(|s| s.as_str()).collect();
    let mut l = LieAlgebra::abelian(&spec.to_string(), &refs);
    l.meta.insert("title".into(), spec.latex());
    let n = lb.n;
    // [J_ij, J_kl] = δ_il J_jk + δ_jk J_il - δ_ik J_jl - δ_jl J_ik
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    for (x, &(i, j)) in pairs.iter().enumerate() {
        for &(k, m) in &pairs[x + 1..] {
            let (ji, jk) = (lb.j[i][j].unwrap(), lb.j[k][m].unwrap());
            for (c, a, b) in [(delta(i, m), j, k), (delta(j, k), i, m), (-delta(i, k), j, m), (-delta(j, m), i, k)] {
                if let (true, Some((s, idx))) = (c != 0, lb.j(a, b)) {
                    add(&mut l, ji, jk, idx, c * s);
                }
            }
        }
    }
    // [P_i, J_jk] = δ_ij P_k - δ_ik P_j and [G_i, J_jk] likewise.
    for &(j, k) in &pairs {
        let jk = lb.j[j][k].unwrap();
        for i in 0..n {
            for v in [&lb.p, &lb.g] {
                add(&mut l, v[i], jk, v[k], delta(i, j));
                add(&mut l, v[i], jk, v[j], -delta(i, k));
            }
        }
    }
    for i in 0..n {
        // [T, G_i] = -P_i
        add(&mut l, lb.t, lb.g[i], lb.p[i], -1);
        if let Some(d) = lb.d {
            add(&mut l, d, lb.g[i], lb.g[i], 1);
            add(&mut l, d, lb.p[i], lb.p[i], -1);
        }
        if let Some(s) = lb.s {
            add(&mut l, s, lb.p[i], lb.g[i], 1);
        }
        if let Some(z) = lb.z {
            add(&mut l, z, lb.g[i], lb.g[i], -1);
            add(&mut l, z, lb.p[i], lb.p[i], -1);
        }
        if let Some(m) = lb.m {
            add(&mut l, lb.g[i], lb.p[i], m, 1);
        }
    }
    if let Some(d) = lb.d {
        add(&mut l, d, lb.t, lb.t, -2);
    }
    if let (Some(d), Some(s)) = (lb.d, lb.s) {
        add(&mut l, d, s, s, 2);
        add(&mut l, lb.t, s, d, 1);
    }
    if let (Some(z), Some(m)) = (lb.z, lb.m) {
        add(&mut l, z, m, m, -2);
    }
    Ok(l)
}

/// The one-parameter deformations of the extended Galilei algebras:
/// reduced `[D,G_i] = (1-2q)G_i`, `[D,P_i] = -(1+2q)P_i`; with mass
/// `[D,T] = (q-2)T`, `[D,P_i] = (q-1)P_i`, `[D,M] = qM`.
pub fn deformed_extended(reduced: bool, n: usize) -> Result<LieAlgebra> {
    let spec = GalileiSpec::new(Level::Extended, reduced, n);
    let mut l = galilei_algebra(spec)?;
    let lb = Labels::new(&spec);
    let q = RatExpr::var("q");
    let one = RatExpr::one();
    let two = RatExpr::int(2);
    let d = lb.d.expect("extended algebras contain D");
    if reduced {
        for i in 0..n {
            put(&mut l, d, lb.g[i], lb.g[i], &one - &(&two * &q));
            put(&mut l, d, lb.p[i], lb.p[i], -&(&one + &(&two * &q)));
        }
    } else {
        put(&mut l, d, lb.t, lb.t, &q - &two);
        for i in 0..n {
            put(&mut l, d, lb.p[i], lb.p[i], &q - &one);
        }
        put(&mut l, d, lb.m.unwrap(), lb.m.unwrap(), q.clone());
    }
    let bar = if reduced { "bar" } else { "" };
    l.name = format!("A{bar}G2q({n})");
    let tex = if reduced { "\\bar{G}" } else { "G" };
    l.meta.insert("title".into(), format!("{{\\rm A{tex}}}^q_2({n})"));
    l.meta.insert("deformation_parameter".into(), "q".into());
    l.meta.insert("base".into(), spec.to_string());
    l.params.push(Param { symbol: Symbol::new("q"), range: None });
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_specs(n: usize) -> Vec<GalileiSpec> {
        let mut v = Vec::new();
        for k in 1..=4 {
            for reduced in [false, true] {
                v.push(GalileiSpec::new(Level::from_index(k).unwrap(), reduced, n));
            }
        }
        v
    }

    #[test]
    fn dimensions_follow_the_family_formula() {
        let extra = |s: &GalileiSpec| match (s.level, s.reduced) {
            (Level::Classical, false) => 2,
            (Level::Extended, false) => 3,
            (Level::Special, false) => 4,
            (Level::Full, false) => 5,
            (Level::Classical, true) => 1,
            (Level::Extended, true) => 2,
            (Level::Special, true) => 3,
            (Level::Full, true) => 4,
        };
        for n in 1..=3 {
            for s in all_specs(n) {
                let l = galilei_algebra(s).unwrap();
                assert_eq!(l.dim(), n * (n - 1) / 2 + 2 * n + extra(&s), "{s}");
            }
        }
    }

    #[test]
    fn every_family_is_a_lie_algebra() {
        for n in 1..=3 {
            for s in all_specs(n) {
                assert!(galilei_algebra(s).unwrap().jacobi_check().holds, "{s}");
            }
            for reduced in [false, true] {
                assert!(deformed_extended(reduced, n).unwrap().jacobi_check().holds);
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for s in all_specs(2) {
            assert_eq!(GalileiSpec::parse(&s.to_string()), Some(s));
        }
        assert_eq!(GalileiSpec::parse("AG5(1)"), None);
        assert_eq!(GalileiSpec::parse("AbarG1(0)"), None);
    }

    #[test]
    fn full_algebra_in_the_plane() {
        let l = galilei_algebra(GalileiSpec::new(Level::Full, false, 2)).unwrap();
        assert_eq!(l.dim(), 10);
        let (z, m) = (l.index("Z").unwrap(), l.index("M").unwrap());
        assert_eq!(l.constant(z, m, m), &RatExpr::int(-2));
        let (g1, p1, p2) = (l.index("G1").unwrap(), l.index("P1").unwrap(), l.index("P2").unwrap());
        assert!(l.constant(g1, p1, m).is_one());
        assert!(l.constant(g1, p2, m).is_zero());
        let (j12, pp1) = (l.index("J12").unwrap(), l.index("P1").unwrap());
        // [P_1, J_12] = P_2
        assert!(l.constant(pp1, j12, p2).is_one());
    }

    #[test]
    fn one_dimensional_reduced_classical() {
        let l = galilei_algebra(GalileiSpec::new(Level::Classical, true, 1)).unwrap();
        assert_eq!(l.basis, ["P", "T", "G"]);
        assert_eq!(l.nonzero_brackets().len(), 1);
        assert_eq!(l.constant(2, 1, 0), &RatExpr::one());
    }
}
