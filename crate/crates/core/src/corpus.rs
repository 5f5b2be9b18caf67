//! Known-values registry and the verification runner.
//!
//! The registry is a data file of expected tables, each tagged with its
//! provenance, kept apart from the code that computes them. The runner
//! recomputes every entry and then runs the structural invariant checks. Its
//! report depends only on the registry and the build, so repeated runs are
//! byte-identical.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bounds::{
    bcm_e1_assemble, circle_e1_inputs, cohdim_bound, e1_connectivity_bound, mod2_cohdim_disc,
    stability_ranges, surface_e1_profile, StabilityKind,
};
use crate::braidduality::{
    braid_cohomology, les_euler_check, puncture_split_mod2, SpaceDescriptor,
};
use crate::chaincore::{homology, ChainComplex, Coefficients, GradedGroup};
use crate::error::{Error, Result};
use crate::spsym::{sp_chain_complex, sp_homology, steenrod_monotonicity_check, Preset};
use crate::tsp::{
    circle_family, circle_full_tables, mod2_tp_splitting_check, reduced_tp_circle,
    tp_circle_complex, wedge_reduced_tp,
};

/// Environment variable naming a directory holding `registry.json`.
pub const CORPUS_DIR_ENV: &str = "CONFIGHOM_CORPUS_DIR";
pub const REGISTRY_FILE: &str = "registry.json";

const EMBEDDED_REGISTRY: &str = include_str!("../corpus/registry.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// `published` for values quoted from the literature, `derived` for
    /// values computed by hand from stated structure.
    pub kind: String,
    pub anchor: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityClaim {
    pub kind: String,
    pub k_min: usize,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "group", rename_all = "snake_case")]
pub enum RegistryEntry {
    Braid {
        id: String,
        provenance: Provenance,
        space: SpaceDescriptor,
        k: usize,
        coefficients: Coefficients,
        expected: GradedGroup,
    },
    SplitMod2 {
        id: String,
        provenance: Provenance,
        d: usize,
        n: usize,
        base: Vec<GradedGroup>,
        base_provenance: Provenance,
        expected: GradedGroup,
    },
    Sp {
        id: String,
        provenance: Provenance,
        preset: String,
        n: usize,
        reduced: bool,
        coefficients: Coefficients,
        expected: GradedGroup,
    },
    Tp {
        id: String,
        provenance: Provenance,
        n: usize,
        coefficients: Coefficients,
        expected: GradedGroup,
    },
    /// A statement that is not computed here; only the stability range it
    /// relies on is checked.
    Reference {
        id: String,
        provenance: Provenance,
        statement: String,
        stability: StabilityClaim,
    },
}

impl RegistryEntry {
    pub fn id(&self) -> &str {
        match self {
            RegistryEntry::Braid { id, .. }
            | RegistryEntry::SplitMod2 { id, .. }
            | RegistryEntry::Sp { id, .. }
            | RegistryEntry::Tp { id, .. }
            | RegistryEntry::Reference { id, .. } => id,
        }
    }

    pub fn group(&self) -> &'static str {
        match self {
            RegistryEntry::Braid { .. } => "braid",
            RegistryEntry::SplitMod2 { .. } => "split_mod2",
            RegistryEntry::Sp { .. } => "sp",
            RegistryEntry::Tp { .. } => "tp",
            RegistryEntry::Reference { .. } => "reference",
        }
    }

    pub fn provenance(&self) -> &Provenance {
        match self {
            RegistryEntry::Braid { provenance, .. }
            | RegistryEntry::SplitMod2 { provenance, .. }
            | RegistryEntry::Sp { provenance, .. }
            | RegistryEntry::Tp { provenance, .. }
            | RegistryEntry::Reference { provenance, .. } => provenance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Registry {
    pub version: u32,
    pub entries: Vec<RegistryEntry>,
}

impl Registry {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("registry: {e}")))
    }

    pub fn embedded() -> Self {
        Registry::parse(EMBEDDED_REGISTRY).expect("embedded registry parses")
    }

    /// `dir/registry.json`.
    pub fn load_dir(dir: &Path) -> Result<Self> {
        let path: PathBuf = dir.join(REGISTRY_FILE);
        let text = std::fs::read_to_string(&path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Registry::parse(&text)
    }

    /// The directory named by [`CORPUS_DIR_ENV`] if set, the embedded copy
    /// otherwise.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CORPUS_DIR_ENV) {
            Some(dir) if !dir.is_empty() => Registry::load_dir(Path::new(&dir)),
            _ => Ok(Registry::embedded()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub group: String,
    pub id: String,
    pub provenance: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub total: usize,
    pub failed: usize,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{} [{}] {} ({}){}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.group,
                c.id,
                c.provenance,
                if c.detail.is_empty() { String::new() } else { format!(": {}", c.detail) }
            ));
        }
        out.push_str(&format!(
            "{} checks, {} passed, {} failed\n",
            self.total,
            self.total - self.failed,
            self.failed
        ));
        out
    }
}

struct Recorder {
    checks: Vec<CheckOutcome>,
}

impl Recorder {
    fn push(&mut self, group: &str, id: &str, provenance: &str, result: Result<std::result::Result<(), String>>) {
        let (pass, detail) = match result {
            Ok(Ok(())) => (true, String::new()),
            Ok(Err(why)) => (false, why),
            Err(e) => (false, format!("error: {e}")),
        };
        self.checks.push(CheckOutcome {
            group: group.into(),
            id: id.into(),
            provenance: provenance.into(),
            pass,
            detail,
        });
    }
}

fn compare(got: &GradedGroup, expected: &GradedGroup) -> std::result::Result<(), String> {
    if got == expected {
        Ok(())
    } else {
        Err(format!("expected {expected}, got {got}"))
    }
}

fn ensure(cond: bool, why: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn check_entry(entry: &RegistryEntry) -> Result<std::result::Result<(), String>> {
    match entry {
        RegistryEntry::Braid { space, k, coefficients, expected, .. } => {
            Ok(compare(&braid_cohomology(space, *k, *coefficients)?, expected))
        }
        RegistryEntry::SplitMod2 { d, n, base, expected, .. } => {
            Ok(compare(&puncture_split_mod2(base, *d, *n)?, expected))
        }
        RegistryEntry::Sp { preset, n, reduced, coefficients, expected, .. } => {
            let p = preset.parse::<Preset>()?.presentation();
            Ok(compare(&sp_homology(&p, *n, *reduced, *coefficients)?, expected))
        }
        RegistryEntry::Tp { n, coefficients, expected, .. } => {
            Ok(compare(&homology(&tp_circle_complex(*n), *coefficients)?, expected))
        }
        RegistryEntry::Reference { stability, .. } => {
            let kind: StabilityKind = stability.kind.parse()?;
            for k in stability.k_min..stability.k_min + 32 {
                let range = stability_ranges(kind, k)?.int();
                if range < stability.degree {
                    return Ok(Err(format!(
                        "stability range {range} at k = {k} does not reach degree {}",
                        stability.degree
                    )));
                }
            }
            Ok(Ok(()))
        }
    }
}

/// Recomputes every registry entry, then runs the invariant checks.
pub fn run_verification(registry: &Registry) -> VerifyReport {
    let mut rec = Recorder { checks: Vec::new() };
    for entry in &registry.entries {
        let prov = entry.provenance();
        rec.push(
            entry.group(),
            entry.id(),
            &format!("{}:{}", prov.kind, prov.anchor),
            check_entry(entry),
        );
    }
    run_invariants(registry, &mut rec);
    let failed = rec.checks.iter().filter(|c| !c.pass).count();
    VerifyReport {
        total: rec.checks.len(),
        failed,
        checks: rec.checks,
    }
}

fn builtin_complexes() -> Result<Vec<(String, ChainComplex)>> {
    let mut out = Vec::new();
    for n in 0..=12 {
        out.push((format!("TP{n}(S1)"), tp_circle_complex(n)));
    }
    for preset in ["point", "s2", "circle", "wedge:2", "wedge:3"] {
        let p = preset.parse::<Preset>()?.presentation();
        for n in 0..=5 {
            for reduced in [false, true] {
                let tag = if reduced { "SPbar" } else { "SP" };
                out.push((format!("{tag}{n}({preset})"), sp_chain_complex(&p, n, reduced)?));
            }
        }
    }
    Ok(out)
}

fn run_invariants(registry: &Registry, rec: &mut Recorder) {
    const F2: Coefficients = Coefficients::F2;
    let fields = [Coefficients::Rationals, F2, Coefficients::PrimeField(3)];

    match builtin_complexes() {
        Err(e) => rec.push("invariant", "built-in complexes", "structural", Err(e)),
        Ok(complexes) => {
            for (name, c) in &complexes {
                let result = (|| -> Result<std::result::Result<(), String>> {
                    if let Err(e) = c.check_boundary_squared() {
                        return Ok(Err(e.to_string()));
                    }
                    let z = homology(c, Coefficients::Integers)?;
                    let q = homology(c, Coefficients::Rationals)?;
                    let free_ranks_match = (0..c.len()).all(|d| z.rank(d) == q.rank(d));
                    if !free_ranks_match {
                        return Ok(Err(format!("free ranks {z} differ from rational dims {q}")));
                    }
                    for f in fields {
                        let chi = homology(c, f)?.euler_characteristic();
                        if chi != c.euler_characteristic() {
                            return Ok(Err(format!("Euler characteristic over {f}: {chi} vs cells {}", c.euler_characteristic())));
                        }
                    }
                    Ok(Ok(()))
                })();
                rec.push("invariant", &format!("chain complex {name}"), "structural", result);
            }
        }
    }

    rec.push("invariant", "TP(S1) closed form, n ≤ 50", "published:circle", (|| {
        for n in 0..=50 {
            let h = homology(&tp_circle_complex(n), Coefficients::Integers)?;
            let mut expected = GradedGroup::point(Coefficients::Integers);
            for q in (1..n).step_by(2) {
                expected.set(q, 0, &[2])?;
            }
            if n % 2 == 1 {
                expected.add_rank(n, 1);
            }
            if h != expected {
                return Ok(Err(format!("n = {n}: got {h}")));
            }
        }
        Ok(Ok(()))
    })());

    rec.push("invariant", "mod-2 TP splitting, circle, n ≤ 12", "published:property(2)", (|| {
        let report = mod2_tp_splitting_check(&circle_full_tables(12, F2)?, circle_family(12, F2)?.levels())?;
        Ok(ensure(report.passed(), || format!("{} failing (q, k) pairs", report.failures().count())))
    })());

    rec.push("invariant", "wedge decomposition symmetric in factors", "structural", (|| {
        let circle = circle_family(6, F2)?;
        let two = crate::tsp::wedge_of_circles_family(2, 6, F2)?;
        for n in 0..=6 {
            let a = wedge_reduced_tp(&[circle.clone(), two.clone()], n, F2)?;
            let b = wedge_reduced_tp(&[two.clone(), circle.clone()], n, F2)?;
            if a != b {
                return Ok(Err(format!("level {n}")));
            }
        }
        Ok(Ok(()))
    })());

    for preset in ["point", "s2", "circle", "wedge:2", "wedge:3"] {
        rec.push("invariant", &format!("SP monotonicity {preset}, n ≤ 10"), "published:steenrod", (|| {
            let p = preset.parse::<Preset>()?.presentation();
            let report = steenrod_monotonicity_check(&p, 10, F2)?;
            Ok(ensure(report.passed(), || "dimension drops from SP^{n-1} to SP^n".into()))
        })());
    }

    rec.push("invariant", "circle: duality agrees with puncture splitting, k ≤ 30", "derived:main11", (|| {
        let punctured = SpaceDescriptor::punctured_circle();
        for k in 1..=30 {
            let closed = braid_cohomology(&SpaceDescriptor::closed_circle(), k, F2)?;
            let base: Vec<GradedGroup> = (0..=k)
                .map(|m| braid_cohomology(&punctured, m, F2))
                .collect::<Result<_>>()?;
            if puncture_split_mod2(&base, 1, k)? != closed {
                return Ok(Err(format!("k = {k}")));
            }
            let euler = les_euler_check(&closed, &base[k], &base[k - 1], 1, F2)?;
            if !euler.pass {
                return Ok(Err(format!("Euler check at k = {k}: {euler:?}")));
            }
        }
        Ok(Ok(()))
    })());

    rec.push("invariant", "sphere pairs: Euler characteristic of the puncture sequence", "published:longexact", (|| {
        for entry in &registry.entries {
            if let RegistryEntry::SplitMod2 { d, n, base, expected, .. } = entry {
                let r = les_euler_check(expected, &base[*n], &base[*n - 1], *d, F2)?;
                if !r.pass {
                    return Ok(Err(format!("d = {d}: {r:?}")));
                }
            }
        }
        Ok(Ok(()))
    })());

    rec.push("invariant", "top cohomological degree within main3 bound", "published:main3", (|| {
        for entry in &registry.entries {
            let (d, k, r, open, table) = match entry {
                RegistryEntry::Braid { space, k, expected, .. } if *k >= 2 => (
                    space.d,
                    *k,
                    space.quotient_connectivity,
                    space.has_removed_set(),
                    expected,
                ),
                RegistryEntry::SplitMod2 { d, n, expected, .. } if *n >= 2 => (*d, *n, d - 1, false, expected),
                _ => continue,
            };
            let bound = cohdim_bound(d, k, r, open)?.int();
            let top = table.max_degree().map_or(-1, |t| t as i64);
            if top > bound {
                return Ok(Err(format!("{}: top degree {top} above bound {bound}", entry.id())));
            }
            if let RegistryEntry::SplitMod2 { base, .. } = entry {
                let base_top = base[k].max_degree().map_or(-1, |t| t as i64);
                if base_top > cohdim_bound(d, k, d - 1, true)?.int() {
                    return Ok(Err(format!("{} base above bound", entry.id())));
                }
            }
        }
        Ok(Ok(()))
    })());

    rec.push("invariant", "mod-2 disc bound below main3 bound, d ≤ 10, k ≤ 64", "derived:numbered(3)", (|| {
        for d in 2..=10 {
            for k in 2..=64 {
                let disc = mod2_cohdim_disc(d, k)?.int();
                let general = cohdim_bound(d, k, d - 1, true)?.int();
                if disc > general {
                    return Ok(Err(format!("d = {d}, k = {k}: {disc} > {general}")));
                }
            }
        }
        Ok(Ok(()))
    })());

    rec.push("invariant", "E1 term of the circle collapses, n ≤ 20", "published:specseq", (|| {
        for n in 1..=20 {
            let (x, sx) = circle_e1_inputs(n, F2);
            let e1 = bcm_e1_assemble(&x, &sx, n, F2)?;
            if e1.total() != *reduced_tp_circle(n, F2)?.table() {
                return Ok(Err(format!("n = {n}")));
            }
        }
        Ok(Ok(()))
    })());

    rec.push("invariant", "surface E1 bounds k and k + 1, k ≤ 20", "published:twocomplexes", (|| {
        for w in 1..=4 {
            for k in 1..=20 {
                let (x, sx) = surface_e1_profile(w, k, F2);
                let e1 = bcm_e1_assemble(&x, &sx, k, F2)?;
                let open = e1_connectivity_bound(&e1, k, false)?.cohdim.int();
                let closed = e1_connectivity_bound(&e1, k, true)?.cohdim.int();
                if (open, closed) != (k as i64, k as i64 + 1) {
                    return Ok(Err(format!("w = {w}, k = {k}: ({open}, {closed})")));
                }
            }
        }
        Ok(Ok(()))
    })());
}
