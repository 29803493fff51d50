//! End-to-end analysis of a text and parameter sweeps over many texts.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::ArgumentText;
use crate::diagram::{bottleneck_distance, render_svg, SvgOptions};
use crate::embeddings::{lookup_sequence, tokenize, EmbeddingTable};
use crate::error::{Error, Result, Stage};
use crate::persistence::{rips_persistence, DistanceMatrix, PersistenceDiagram, PersistenceOptions, SkippedToken};
use crate::series::{project_seeded, ProjectionSeed};
use crate::takens::{takens_embed, DelayParams};

/// One run of the pipeline on one text.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisConfig {
    pub text_id: String,
    pub text: String,
    pub seed: ProjectionSeed,
    pub delay: DelayParams,
    pub persistence: PersistenceOptions,
}

impl AnalysisConfig {
    pub fn new(text: &ArgumentText) -> Self {
        AnalysisConfig {
            text_id: text.id.clone(),
            text: text.text.clone(),
            seed: ProjectionSeed::default(),
            delay: DelayParams::default(),
            persistence: PersistenceOptions::default(),
        }
    }
}

/// tokenize → lookup → project → delay-embed → Rips persistence.
///
/// The diagram metadata records every parameter and the skipped
/// out-of-vocabulary tokens.
pub fn analyze(table: &EmbeddingTable, config: &AnalysisConfig) -> Result<PersistenceDiagram> {
    let tokens = tokenize(&config.text);
    let (vectors, tokens) = lookup_sequence(table, &tokens).map_err(|e| Error::at(Stage::Lookup, e))?;
    let series = project_seeded(&vectors, config.seed).map_err(|e| Error::at(Stage::Projection, e))?;
    let cloud = takens_embed(&series.values, config.delay).map_err(|e| Error::at(Stage::Takens, e))?;
    let dm = DistanceMatrix::from_cloud(&cloud).map_err(|e| Error::at(Stage::Persistence, e))?;
    let mut diagram = rips_persistence(&dm, &config.persistence).map_err(|e| Error::at(Stage::Persistence, e))?;

    let meta = &mut diagram.metadata;
    meta.text_id = Some(config.text_id.clone());
    meta.embedding_dimension = Some(table.dimension());
    meta.seed = Some(config.seed.0);
    meta.takens_dimension = Some(config.delay.dimension);
    meta.takens_delay = Some(config.delay.delay);
    meta.skipped_tokens = tokens
        .skipped
        .into_iter()
        .map(|(position, token)| SkippedToken { position, token })
        .collect();
    Ok(diagram)
}

/// Where the table for one embedding dimension lives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingSource {
    pub dimension: usize,
    pub path: PathBuf,
}

fn default_seeds() -> Vec<u64> {
    vec![1, 2, 3, 42]
}

fn default_delay_params() -> Vec<DelayParams> {
    vec![
        DelayParams { dimension: 2, delay: 2 },
        DelayParams { dimension: 3, delay: 2 },
        DelayParams { dimension: 2, delay: 3 },
    ]
}

fn default_max_dim() -> usize {
    1
}

/// Sweep configuration as read from TOML or JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// Text ids to run; empty means every known text.
    #[serde(default)]
    pub texts: Vec<String>,
    /// Extra `id<TAB>label<TAB>text` file.
    #[serde(default)]
    pub corpus: Option<PathBuf>,
    pub embeddings: Vec<EmbeddingSource>,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default = "default_delay_params")]
    pub delay_params: Vec<DelayParams>,
    #[serde(default = "default_max_dim")]
    pub max_homology_dim: usize,
    #[serde(default)]
    pub threshold: Option<f64>,
    #[serde(default)]
    pub keep_zero_bars: bool,
    /// Degree compared in the distance tables.
    #[serde(default = "default_max_dim")]
    pub distance_homology_dim: usize,
    #[serde(default)]
    pub svg: bool,
}

impl SweepConfig {
    /// Reads a `.json` file as JSON and anything else as TOML. Relative paths
    /// inside are resolved against the config file's directory.
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let contents = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut config: SweepConfig = if path.extension().is_some_and(|e| e == "json") {
            serde_json::from_str(&contents).map_err(|e| Error::Config(e.to_string()))?
        } else {
            toml::from_str(&contents).map_err(|e| Error::Config(e.to_string()))?
        };
        let base = path.parent().unwrap_or(Path::new("."));
        for source in &mut config.embeddings {
            if source.path.is_relative() {
                source.path = base.join(&source.path);
            }
        }
        if let Some(corpus) = &mut config.corpus {
            if corpus.is_relative() {
                *corpus = base.join(&*corpus);
            }
        }
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.embeddings.is_empty() || self.seeds.is_empty() || self.delay_params.is_empty() {
            return Err(Error::Config(
                "embeddings, seeds and delay_params must be nonempty".to_string(),
            ));
        }
        for p in &self.delay_params {
            DelayParams::new(p.dimension, p.delay)?;
        }
        if self.max_homology_dim > 1 || self.distance_homology_dim > 1 {
            return Err(Error::Config("homology dimensions must be 0 or 1".to_string()));
        }
        let dims: BTreeSet<usize> = self.embeddings.iter().map(|e| e.dimension).collect();
        if dims.len() != self.embeddings.len() {
            return Err(Error::Config("embedding dimensions must be distinct".to_string()));
        }
        Ok(())
    }

    pub fn persistence_options(&self) -> PersistenceOptions {
        PersistenceOptions {
            max_homology_dim: self.max_homology_dim,
            threshold: self.threshold,
            keep_zero_bars: self.keep_zero_bars,
        }
    }
}

/// The parameter grid of a sweep, with embedding tables already loaded.
#[derive(Debug, Clone)]
pub struct SweepPlan<'a> {
    pub texts: &'a [ArgumentText],
    pub tables: &'a [EmbeddingTable],
    pub seeds: Vec<ProjectionSeed>,
    pub delay_params: Vec<DelayParams>,
    pub persistence: PersistenceOptions,
    pub distance_homology_dim: usize,
}

impl SweepPlan<'_> {
    pub fn cell_count(&self) -> usize {
        self.texts.len() * self.tables.len() * self.seeds.len() * self.delay_params.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CellOutcome {
    Ok { diagram: PersistenceDiagram },
    Failed { stage: Option<String>, message: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub index: usize,
    pub text_id: String,
    pub embedding_dimension: usize,
    pub seed: u64,
    pub takens_dimension: usize,
    pub takens_delay: usize,
    #[serde(flatten)]
    pub outcome: CellOutcome,
}

impl SweepCell {
    pub fn diagram(&self) -> Option<&PersistenceDiagram> {
        match &self.outcome {
            CellOutcome::Ok { diagram } => Some(diagram),
            CellOutcome::Failed { .. } => None,
        }
    }

    /// File stem used for per-cell outputs.
    pub fn file_stem(&self) -> String {
        format!(
            "{}_g{}_s{}_m{}_d{}",
            self.text_id, self.embedding_dimension, self.seed, self.takens_dimension, self.takens_delay
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    Seed,
    EmbeddingDimension,
}

/// Bottleneck distance between two grid cells that differ along one axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceEntry {
    pub text_id: String,
    pub axis: SweepAxis,
    pub homology_dimension: usize,
    pub a: usize,
    pub b: usize,
    /// `None` when the distance is infinite.
    pub distance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub cells: Vec<SweepCell>,
    pub distances: Vec<DistanceEntry>,
    pub failures: Vec<usize>,
    pub warnings: Vec<String>,
}

impl SweepReport {
    pub fn to_json(&self) -> Vec<u8> {
        let mut bytes = serde_json::to_vec_pretty(self).expect("report serialization cannot fail");
        bytes.push(b'\n');
        bytes
    }

    pub fn distances_along(&self, axis: SweepAxis) -> impl Iterator<Item = &DistanceEntry> {
        self.distances.iter().filter(move |d| d.axis == axis)
    }
}

/// Runs every cell of the grid (in parallel) and the cross-seed and
/// cross-dimension distance tables. Cell failures are recorded, not raised.
/// The report does not depend on scheduling.
pub fn sweep(plan: &SweepPlan<'_>) -> SweepReport {
    struct Job<'a> {
        text: &'a ArgumentText,
        table: &'a EmbeddingTable,
        seed: ProjectionSeed,
        delay: DelayParams,
    }
    let mut jobs = Vec::with_capacity(plan.cell_count());
    for text in plan.texts {
        for table in plan.tables {
            for &seed in &plan.seeds {
                for &delay in &plan.delay_params {
                    jobs.push(Job { text, table, seed, delay });
                }
            }
        }
    }

    let cells: Vec<SweepCell> = jobs
        .par_iter()
        .enumerate()
        .map(|(index, job)| {
            let config = AnalysisConfig {
                text_id: job.text.id.clone(),
                text: job.text.text.clone(),
                seed: job.seed,
                delay: job.delay,
                persistence: plan.persistence,
            };
            let outcome = match analyze(job.table, &config) {
                Ok(diagram) => CellOutcome::Ok { diagram },
                Err(e) => CellOutcome::Failed {
                    stage: match &e {
                        Error::Stage { stage, .. } => Some(stage.to_string()),
                        _ => None,
                    },
                    message: e.to_string(),
                },
            };
            SweepCell {
                index,
                text_id: job.text.id.clone(),
                embedding_dimension: job.table.dimension(),
                seed: job.seed.0,
                takens_dimension: job.delay.dimension,
                takens_delay: job.delay.delay,
                outcome,
            }
        })
        .collect();

    let mut warnings = BTreeSet::new();
    for cell in &cells {
        if let Some(d) = cell.diagram() {
            if !d.metadata.skipped_tokens.is_empty() {
                let skipped: Vec<&str> = d.metadata.skipped_tokens.iter().map(|s| s.token.as_str()).collect();
                warnings.insert(format!(
                    "text {} (dimension {}): skipped out-of-vocabulary tokens {:?}",
                    cell.text_id, cell.embedding_dimension, skipped
                ));
            }
        }
    }
    let failures: Vec<usize> = cells.iter().filter(|c| c.diagram().is_none()).map(|c| c.index).collect();

    // Pairs of cells that share everything except one axis.
    let mut comparisons = Vec::new();
    for (i, a) in cells.iter().enumerate() {
        for b in &cells[i + 1..] {
            if a.text_id != b.text_id
                || a.takens_dimension != b.takens_dimension
                || a.takens_delay != b.takens_delay
                || a.diagram().is_none()
                || b.diagram().is_none()
            {
                continue;
            }
            let axis = match (a.seed == b.seed, a.embedding_dimension == b.embedding_dimension) {
                (false, true) => SweepAxis::Seed,
                (true, false) => SweepAxis::EmbeddingDimension,
                _ => continue,
            };
            comparisons.push((axis, a, b));
        }
    }
    let hdim = plan.distance_homology_dim;
    let distances = comparisons
        .par_iter()
        .map(|&(axis, a, b)| {
            let result = bottleneck_distance(a.diagram().unwrap(), b.diagram().unwrap(), hdim);
            DistanceEntry {
                text_id: a.text_id.clone(),
                axis,
                homology_dimension: hdim,
                a: a.index,
                b: b.index,
                distance: (!result.infinite).then_some(result.distance),
            }
        })
        .collect();

    SweepReport {
        cells,
        distances,
        failures,
        warnings: warnings.into_iter().collect(),
    }
}

/// Writes `report.json` and, if asked, one SVG per successful cell under
/// `out_dir/cells/`.
pub fn write_sweep(report: &SweepReport, out_dir: &Path, svg: bool) -> Result<()> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let report_path = out_dir.join("report.json");
    fs::write(&report_path, report.to_json()).map_err(|e| Error::io(&report_path, e))?;
    if svg {
        let cells_dir = out_dir.join("cells");
        fs::create_dir_all(&cells_dir).map_err(|e| Error::io(&cells_dir, e))?;
        for cell in &report.cells {
            let Some(diagram) = cell.diagram() else { continue };
            let options = SvgOptions {
                title: Some(format!(
                    "{} (g:{}, seed:{}, m:{}, tau:{})",
                    cell.text_id, cell.embedding_dimension, cell.seed, cell.takens_dimension, cell.takens_delay
                )),
                ..SvgOptions::default()
            };
            let path = cells_dir.join(format!("{}.svg", cell.file_stem()));
            fs::write(&path, render_svg(diagram, &options)).map_err(|e| Error::io(&path, e))?;
        }
    }
    Ok(())
}
