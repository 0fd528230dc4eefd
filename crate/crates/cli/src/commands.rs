//! Subcommands, each behind [`Command`] and looked up by name in a [`Registry`].

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, ensure, Context, Result};
use serde::Serialize;
use twisted_core::abelian::{GroupSummary, IntegerMatrix};
use twisted_core::chains::{
    cone_face_identities, cone_null_homotopy, mayer_vietoris_check, twisted_group_chains, verify_null_homotopy,
    ChainComplex,
};
use twisted_core::groupwords::{
    abelianization_mismatch, abelianized_chains, check_simplicial_identities, enumerate_words, Abelianization,
    CheckConfig, TwistedFreeConstruction,
};
use twisted_core::products::{twisted_product, twisted_smash, verify_bundle_local_triviality, SMASH_BASEPOINT};
use twisted_core::spaces::{PathSpace, Space};
use twisted_core::Error as CoreError;

use crate::docs::{read_json, LoadedSpace, SpaceDoc, Twist, TwistDoc};
use crate::report::{JobEcho, Report};

/// Everything a command may read from the command line.
#[derive(Clone, Debug, Default)]
pub struct Job {
    pub spaces: Vec<PathBuf>,
    pub twist: Option<PathBuf>,
    pub cap: Option<usize>,
    pub basepoint: Option<String>,
    pub reduced: bool,
    pub unreduced: bool,
    pub seed: Option<u64>,
    pub emit_matrices: bool,
    pub apex: Option<String>,
    pub samples: usize,
    pub max_degree: usize,
    pub max_base_degree: usize,
}

impl Job {
    pub fn echo(&self, cap: usize) -> JobEcho {
        JobEcho {
            spaces: self.spaces.iter().map(|p| p.display().to_string()).collect(),
            twist: self.twist.as_ref().map(|p| p.display().to_string()),
            cap,
            basepoint: self.basepoint.clone(),
            seed: self.seed,
        }
    }

    pub fn cap_or(&self, default: usize) -> Result<usize> {
        let cap = self.cap.unwrap_or(default);
        ensure!(cap >= 1, "--cap must be at least 1");
        Ok(cap)
    }

    fn load_spaces(&self) -> Result<Vec<LoadedSpace>> {
        self.spaces.iter().map(|p| read_json::<SpaceDoc>(p)?.build().with_context(|| p.display().to_string())).collect()
    }

    /// The single `--space`, rejected if malformed.
    fn space(&self) -> Result<Space> {
        ensure!(self.spaces.len() == 1, "expected exactly one --space, got {}", self.spaces.len());
        let loaded = self.load_spaces()?.pop().expect("one space");
        if let Some(v) = loaded.violations.first() {
            bail!("malformed space: {v}");
        }
        Ok(loaded.space)
    }

    fn twist(&self) -> Result<Twist> {
        let path = self.twist.as_ref().context("missing --twist")?;
        read_json::<TwistDoc>(path)?.build().with_context(|| path.display().to_string())
    }

    fn basepoint(&self, space: &dyn PathSpace) -> Result<String> {
        let b = match &self.basepoint {
            Some(b) => b.clone(),
            None => space.vertex_labels().first().cloned().context("space has no vertices")?,
        };
        ensure!(space.vertex_index(&b).is_some(), "basepoint `{b}` is not a vertex");
        Ok(b)
    }

    fn seed(&self) -> Result<u64> {
        self.seed.context("randomized suites need --seed")
    }
}

pub trait Command: Send + Sync {
    fn name(&self) -> &'static str;

    fn about(&self) -> &'static str;

    fn default_cap(&self) -> usize;

    /// Fills `report`; an `Err` is an input error, failed checks go into verdicts.
    fn run(&self, job: &Job, cap: usize, report: &mut Report) -> Result<()>;
}

#[derive(Default)]
pub struct Registry {
    commands: BTreeMap<&'static str, Box<dyn Command>>,
}

impl Registry {
    pub fn register(&mut self, command: Box<dyn Command>) {
        self.commands.insert(command.name(), command);
    }

    pub fn standard() -> Self {
        let mut r = Self::default();
        r.register(Box::new(Homology));
        r.register(Box::new(Verify));
        r.register(Box::new(VerifyIdentities));
        r.register(Box::new(MvCheck));
        r.register(Box::new(ConeCheck));
        r.register(Box::new(BundleCheck));
        r.register(Box::new(Smash));
        r
    }

    pub fn get(&self, name: &str) -> Option<&dyn Command> {
        self.commands.get(name).map(Box::as_ref)
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.commands.keys().copied().collect()
    }

    pub fn help(&self) -> String {
        self.commands.values().map(|c| format!("  {:<18}{}", c.name(), c.about())).collect::<Vec<_>>().join("\n")
    }
}

fn summaries(h: &[GroupSummary]) -> Vec<String> {
    h.iter().map(ToString::to_string).collect()
}

#[derive(Serialize)]
struct MatrixDump {
    bases: Vec<Vec<String>>,
    /// `boundaries[n]` is `∂ₙ` as rows; entries as decimal strings.
    boundaries: Vec<Vec<Vec<String>>>,
}

fn dump(c: &ChainComplex) -> MatrixDump {
    let matrix = |m: &IntegerMatrix| (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect();
    MatrixDump {
        bases: (0..=c.cap()).map(|n| c.basis(n).to_vec()).collect(),
        boundaries: c.boundaries().iter().map(matrix).collect(),
    }
}

fn first<T: ToString>(items: impl IntoIterator<Item = T>) -> Option<String> {
    items.into_iter().next().map(|t| t.to_string())
}

pub struct Homology;

impl Command for Homology {
    fn name(&self) -> &'static str {
        "homology"
    }

    fn about(&self) -> &'static str {
        "twisted homology H_n for n < cap (abelian twist), plus cohomology for free coefficients"
    }

    fn default_cap(&self) -> usize {
        3
    }

    fn run(&self, job: &Job, cap: usize, report: &mut Report) -> Result<()> {
        let space = job.space()?;
        let twist = job.twist()?;
        let s = twist.abelian()?;
        let modes: Vec<bool> = match (job.reduced, job.unreduced) {
            (false, false) | (false, true) => vec![false],
            (true, false) => vec![true],
            (true, true) => vec![false, true],
        };
        for reduced in modes {
            let base = if reduced { Some(job.basepoint(&space)?) } else { job.basepoint.clone() };
            let c = twisted_group_chains(&space, s, cap, base.as_deref(), reduced)?;
            let key = if reduced { "reduced_homology" } else { "homology" };
            report.result(key, summaries(&c.homology_all()?));
            if !c.coefficients().has_relations() {
                let co = if reduced { "reduced_cohomology" } else { "cohomology" };
                report.result(co, summaries(&c.cohomology_all()?));
            }
            if job.emit_matrices {
                report.result(&format!("{key}_matrices"), dump(&c));
            }
        }
        Ok(())
    }
}

pub struct Verify;

impl Command for Verify {
    fn name(&self) -> &'static str {
        "verify"
    }

    fn about(&self) -> &'static str {
        "well-formedness, commuting rule, and the identity suite for the twist kind"
    }

    fn default_cap(&self) -> usize {
        3
    }

    fn run(&self, job: &Job, cap: usize, report: &mut Report) -> Result<()> {
        ensure!(job.spaces.len() == 1, "expected exactly one --space");
        let loaded = job.load_spaces()?.pop().expect("one space");
        report.verdict(format!("{} is well formed", loaded.space.kind()), first(&loaded.violations));
        if !loaded.violations.is_empty() {
            return Ok(());
        }
        let space = loaded.space;
        let twist = job.twist()?;
        let commuting = match &twist {
            Twist::Abelian(s) => s.validate_on(&space)?,
            Twist::FiniteGroup(s) => s.validate_on(&space)?,
            Twist::Slice { .. } => twist.slice(cap)?.validate_on(&space)?,
        };
        let passed = commuting.passed();
        report.result("adjacent_pairs", commuting.checked_pairs);
        report.verdict("δ commutes on adjacent vertices", first(&commuting.violations));
        if !passed {
            return Ok(());
        }
        match &twist {
            Twist::Abelian(s) => {
                let base = job.basepoint(&space)?;
                for reduced in [false, true] {
                    let c = twisted_group_chains(&space, s, cap, Some(&base), reduced)?;
                    let name = if reduced { "∂∂ = 0 (reduced)" } else { "∂∂ = 0" };
                    report.verdict(name, c.verify_boundary_squared()?.map(|w| w.to_string()));
                }
            }
            Twist::FiniteGroup(s) => {
                let config = CheckConfig {
                    max_degree: job.max_degree,
                    random_samples: job.samples,
                    seed: job.seed()?,
                    ..CheckConfig::default()
                };
                let f = TwistedFreeConstruction::new(&space, s, &job.basepoint(&space)?, config.max_degree + 2)?;
                word_suite(&f, &config, report)?;
            }
            Twist::Slice { .. } => {
                let y = twist.slice(cap)?;
                let nonsingular = y.nonsingularity()?.certificate().is_some();
                if !nonsingular {
                    report.note("Δ-only mode: δ is singular, degeneracy identities skipped");
                }
                let p = twisted_product(&space, &y, cap, nonsingular)?;
                let v = p.slice.validate();
                report.result("product_cells", p.slice.counts());
                report.verdict("twisted product is a simplicial set", first(&v.violations));
            }
        }
        Ok(())
    }
}

fn word_suite(f: &TwistedFreeConstruction, config: &CheckConfig, report: &mut Report) -> Result<()> {
    if !f.is_nonsingular() {
        report.note("Δ-only mode: δ is singular, degeneracy identities skipped");
    }
    let r = check_simplicial_identities(f, config)?;
    report.result("exhaustive_words", r.exhaustive_words);
    report.result("random_words", r.random_words);
    report.result("identity_checks", r.identity_checks);
    report.result("homomorphism_checks", r.homomorphism_checks);
    let identities = if f.is_nonsingular() { "simplicial identities" } else { "Δ-identity" };
    // a Δ-identity witness is the more telling one when several identities fail
    let witness = r.delta_failures().next().or(r.failures.first());
    report.verdict(identities, witness.map(ToString::to_string));
    report.verdict("structure maps are homomorphisms", first(&r.homomorphism_failures));
    if r.passed() {
        let ab = Abelianization::of(f.group());
        let chains = abelianized_chains(f, &ab)?;
        let words: Vec<_> = (1..=config.max_degree).flat_map(|n| enumerate_words(f, n, 1)).collect();
        let mismatch = abelianization_mismatch(f, &ab, &chains, &words)?;
        report.verdict("abelianization matches twisted chains", mismatch.map(|w| format!("on {w}")));
    }
    Ok(())
}

pub struct VerifyIdentities;

impl Command for VerifyIdentities {
    fn name(&self) -> &'static str {
        "verify-identities"
    }

    fn about(&self) -> &'static str {
        "simplicial identities on reduced words (finite_group twist, needs --seed)"
    }

    fn default_cap(&self) -> usize {
        5
    }

    fn run(&self, job: &Job, _cap: usize, report: &mut Report) -> Result<()> {
        let space = job.space()?;
        let twist = job.twist()?;
        let s = twist.finite_group()?;
        let config = CheckConfig {
            max_degree: job.max_degree,
            random_samples: job.samples,
            seed: job.seed()?,
            ..CheckConfig::default()
        };
        let base = job.basepoint(&space)?;
        let cap = config.max_degree + 2;
        let aligned = s.aligned_to(&space)?;
        let commuting = aligned.validate_on(&space)?;
        report.verdict("δ commutes on adjacent vertices", first(&commuting.violations));
        if !commuting.passed() {
            report.note("running the suite anyway to exhibit the failure");
        }
        let f = TwistedFreeConstruction::new_unchecked(&space, &aligned, &base, cap)?;
        word_suite(&f, &config, report)
    }
}

pub struct MvCheck;

impl Command for MvCheck {
    fn name(&self) -> &'static str {
        "mv-check"
    }

    fn about(&self) -> &'static str {
        "Mayer-Vietoris for two complexes given as two --space documents"
    }

    fn default_cap(&self) -> usize {
        3
    }

    fn run(&self, job: &Job, cap: usize, report: &mut Report) -> Result<()> {
        ensure!(job.spaces.len() == 2, "mv-check needs two --space documents");
        let mut pieces = Vec::new();
        for loaded in job.load_spaces()? {
            if let Some(v) = loaded.violations.first() {
                bail!("malformed space: {v}");
            }
            match loaded.space {
                Space::Complex(k) => pieces.push(k),
                Space::Category(_) => bail!("mv-check works on simplicial complexes"),
            }
        }
        let twist = job.twist()?;
        let s = twist.abelian()?;
        let overlap = pieces[0].intersection(&pieces[1])?;
        let base = job.basepoint(&overlap)?;
        let r = mayer_vietoris_check(&pieces[0], &pieces[1], s, cap, &base)?;
        report.result(
            "path_counts",
            r.counts.iter().map(|c| [c.whole, c.first, c.second, c.overlap]).collect::<Vec<_>>(),
        );
        report.verdict("path sets decompose", first(r.set_failures.iter().map(|n| format!("degree {n}"))));
        report.verdict("sequence maps are chain maps", first(&r.chain_map_failures));
        report.verdict("sequence is short exact", first(&r.exactness_failures));
        let whole = pieces[0].union(&pieces[1])?;
        let c = twisted_group_chains(&whole, s, cap, Some(&base), true)?;
        report.result("reduced_homology", summaries(&c.homology_all()?));
        Ok(())
    }
}

pub struct ConeCheck;

impl Command for ConeCheck {
    fn name(&self) -> &'static str {
        "cone-check"
    }

    fn about(&self) -> &'static str {
        "contractibility of the cone on --space with apex --apex (abelian twist including the apex)"
    }

    fn default_cap(&self) -> usize {
        4
    }

    fn run(&self, job: &Job, cap: usize, report: &mut Report) -> Result<()> {
        let base = job.space()?;
        let apex = job.apex.as_deref().context("cone-check needs --apex")?;
        let twist = job.twist()?;
        let s = twist.abelian()?;
        let delta_apex = s.map_of(apex).with_context(|| format!("the twist must assign δ_{apex}"))?.clone();
        let on_base = s.restrict(base.vertex_labels())?;
        let extension = match on_base.regular_extension(apex, delta_apex) {
            Ok(e) => e,
            Err(e @ (CoreError::Singular(_) | CoreError::NotCommuting(..))) => {
                report.verdict("regular extension", Some(e.to_string()));
                return Ok(());
            }
            Err(e) => return Err(e.into()),
        };
        report.verdict("regular extension", None);
        let cone = base.cone(apex)?;
        report.verdict("d₀Φ = id, dᵢΦ = Φdᵢ₋₁", cone_face_identities(&cone, apex, cap)?.map(|w| w.to_string()));
        let (c, phi) = cone_null_homotopy(&cone, &extension, apex, cap)?;
        report.verdict("∂Φ + Φ∂ = id", verify_null_homotopy(&c, &phi)?.map(|w| w.to_string()));
        let h = c.homology_all()?;
        report.verdict(
            "reduced homology vanishes",
            h.iter().position(|g| !g.is_trivial()).map(|n| format!("H̃{n} = {}", h[n])),
        );
        report.result("reduced_homology", summaries(&h));
        if job.emit_matrices {
            report.result("reduced_homology_matrices", dump(&c));
        }
        Ok(())
    }
}

pub struct BundleCheck;

impl Command for BundleCheck {
    fn name(&self) -> &'static str {
        "bundle-check"
    }

    fn about(&self) -> &'static str {
        "local triviality of the twisted product over every base simplex (slice twist)"
    }

    fn default_cap(&self) -> usize {
        4
    }

    fn run(&self, job: &Job, cap: usize, report: &mut Report) -> Result<()> {
        let space = job.space()?;
        let y = job.twist()?.slice(cap)?;
        match verify_bundle_local_triviality(&space, &y, cap, job.max_base_degree) {
            Ok(r) => {
                report.result("simplices_checked", r.simplices_checked);
                report.result("face_checks", r.face_checks);
                report.result("degeneracy_checks", r.degeneracy_checks);
                report.verdict("locally trivial", first(&r.failures));
            }
            Err(e @ (CoreError::Singular(_) | CoreError::NotCommuting(..))) => {
                report.verdict("locally trivial", Some(e.to_string()));
            }
            Err(e) => return Err(e.into()),
        }
        Ok(())
    }
}

pub struct Smash;

impl Command for Smash {
    fn name(&self) -> &'static str {
        "smash"
    }

    fn about(&self) -> &'static str {
        "twisted smash product of the fibre nerve with the space (slice twist)"
    }

    fn default_cap(&self) -> usize {
        3
    }

    fn run(&self, job: &Job, cap: usize, report: &mut Report) -> Result<()> {
        let space = job.space()?;
        let y = job.twist()?.slice(cap)?;
        let base = job.basepoint(&space)?;
        let nonsingular = y.aligned_to(&space)?.nonsingularity()?.certificate().is_some();
        if !nonsingular {
            report.note("Δ-only mode: δ is singular, degeneracies omitted");
        }
        let sm = twisted_smash(&space, &y, &base, cap, nonsingular)?;
        report.result("basepoint_cell", SMASH_BASEPOINT);
        report.result("cells", sm.slice.counts());
        report.result("collapsed", &sm.collapsed);
        report.result("product_cells", &sm.product_counts);
        let v = sm.slice.validate();
        report.verdict("smash is a simplicial set", first(&v.violations));
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use twisted_core::twist::TwistedStructure;

    #[test]
    fn registry_holds_every_subcommand() {
        let r = Registry::standard();
        assert_eq!(
            r.names(),
            ["bundle-check", "cone-check", "homology", "mv-check", "smash", "verify", "verify-identities"]
        );
        assert!(r.get("homology").is_some());
        assert!(r.get("nope").is_none());
    }

    #[test]
    fn identity_twist_kind_check() {
        let s = TwistedStructure::identity(twisted_core::abelian::FgAbelianGroup::integers(), &["a".to_string()]);
        let t = Twist::Abelian(s);
        assert!(t.abelian().is_ok());
        assert!(t.finite_group().is_err());
        assert!(t.slice(2).is_err());
        assert_eq!(t.kind(), "abelian");
    }
}
