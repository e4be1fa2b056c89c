use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    Field,
    Grassmannian,
    Orbit,
    Spread,
    AbelianConstruct,
    Partition,
    FastMindist,
    Voronoi,
    Multishot,
    ReproducePaper,
}

impl CommandName {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Field => "field",
            Self::Grassmannian => "grassmannian",
            Self::Orbit => "orbit",
            Self::Spread => "spread",
            Self::AbelianConstruct => "abelian-construct",
            Self::Partition => "partition",
            Self::FastMindist => "fast-mindist",
            Self::Voronoi => "voronoi",
            Self::Multishot => "multishot",
            Self::ReproducePaper => "reproduce-paper",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    Literal,
    ExcludeSelf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum AlphabetKind {
    /// Every k-dimensional subspace.
    Grassmannian,
    /// The k-dimensional subspaces outside the `F_{q^k}` spread.
    SpreadComplement,
    /// The orbit of `--subspace` under the first group of the series.
    Orbit,
}

/// Options shared by all subcommands; a JSON config file uses the same keys.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct RunConfig {
    /// Set from the subcommand, or read from the config file.
    #[arg(skip)]
    pub command: Option<CommandName>,

    /// Extension field descriptor `gf(p,t,n,[c0,...,cn])`.
    #[arg(long)]
    pub field: Option<String>,
    /// Base field order, for a plain vector space ambient.
    #[arg(long)]
    pub q: Option<u32>,
    /// Ambient dimension when `--q` is used.
    #[arg(long)]
    pub n: Option<usize>,
    /// Subspace dimension.
    #[arg(long)]
    pub k: Option<usize>,

    /// Group generator such as `scalar:1`, `semilinear:1,1`, `unipotent:<M>` or `gl:<M>` (repeatable).
    #[arg(long = "group")]
    pub group: Vec<String>,
    /// Initial subspace: `exp:e1,e2,...` (field exponents) or `rows:<matrix>`.
    #[arg(long)]
    pub subspace: Option<String>,
    /// Order of a scalar subgroup `H`.
    #[arg(long)]
    pub subgroup_order: Option<u32>,
    /// Generator of the subgroup `H` (repeatable).
    #[arg(long = "subgroup")]
    pub subgroup: Vec<String>,
    /// Orders of a descending chain of scalar subgroups, for example `63,21,7`.
    #[arg(long, value_delimiter = ',')]
    pub series: Vec<u32>,

    /// Subfield dimension for `spread`, half the ambient dimension for `abelian-construct`.
    #[arg(long)]
    pub r: Option<usize>,
    /// Rank-metric generator matrix, `r × r` (repeatable).
    #[arg(long = "matrix")]
    pub matrix: Vec<String>,
    /// Use the Gabidulin code of this minimum rank distance.
    #[arg(long)]
    pub gabidulin: Option<usize>,
    /// Layout matrix `k × 2r`, or `A` when `--special` is set.
    #[arg(long)]
    pub layout: Option<String>,
    /// Number of rows in the top block of the layout (defaults to all rows).
    #[arg(long)]
    pub layout_split: Option<usize>,
    /// Read `--layout` as the `r × r` matrix `A` of `[I | A]`.
    #[arg(long)]
    pub special: bool,

    /// Voronoi tie rule.
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Codeword whose Voronoi region is listed (defaults to the initial subspace).
    #[arg(long)]
    pub codeword: Option<String>,

    #[arg(long, value_enum)]
    pub alphabet: Option<AlphabetKind>,
    /// Design distance of the multishot code.
    #[arg(long)]
    pub distance: Option<u32>,
    /// Component code per level: `full`, `repetition`, `parity` or `file:<path>` (repeatable).
    #[arg(long = "component")]
    pub components: Vec<String>,
    /// Number of shots (component code length).
    #[arg(long)]
    pub m: Option<usize>,

    /// Criterion ids for `reproduce-paper` (defaults to all).
    #[arg(long = "criterion", value_delimiter = ',')]
    pub criteria: Vec<u32>,

    /// Include every codeword or subspace in the report.
    #[arg(long)]
    pub list: bool,
    /// Cross-check structured results against an exhaustive computation.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Worker threads for exhaustive scans.
    #[arg(long)]
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn format(&self) -> Format {
        self.format.unwrap_or(match self.command {
            Some(CommandName::ReproducePaper) => Format::Text,
            _ => Format::Json,
        })
    }

    pub fn threads(&self) -> usize {
        self.threads.unwrap_or(1)
    }

    /// Checks that the options needed by the command are present and consistent.
    pub fn validate(&self) -> Result<CommandName, String> {
        use CommandName::*;
        let cmd = self.command.ok_or("no command given")?;
        let need = |ok: bool, what: &str| if ok { Ok(()) } else { Err(format!("{} requires {what}", cmd.as_str())) };
        let ambient = self.field.is_some() || (self.q.is_some() && self.n.is_some());
        if self.field.is_some() && (self.q.is_some() || self.n.is_some()) && !matches!(cmd, Grassmannian | AbelianConstruct) {
            return Err("give either --field or --q/--n, not both".into());
        }
        if self.threads == Some(0) {
            return Err("--threads must be at least 1".into());
        }
        match cmd {
            Field => need(self.field.is_some(), "--field")?,
            Grassmannian => {
                need(self.field.is_some() || self.q.is_some(), "--q or --field")?;
                need(self.k.is_some(), "--k")?;
                need(self.field.is_some() || self.n.is_some(), "--n")?;
            }
            Orbit | Voronoi => {
                need(ambient, "--field or --q with --n")?;
                need(self.subspace.is_some(), "--subspace")?;
            }
            Spread => {
                need(self.field.is_some(), "--field")?;
                need(self.r.is_some(), "--r")?;
            }
            AbelianConstruct => {
                need(self.q.is_some(), "--q")?;
                need(self.r.is_some(), "--r")?;
                need(self.layout.is_some(), "--layout")?;
                need(!self.matrix.is_empty() || self.gabidulin.is_some(), "--matrix or --gabidulin")?;
                if !self.matrix.is_empty() && self.gabidulin.is_some() {
                    return Err("give either --matrix or --gabidulin, not both".into());
                }
            }
            Partition | FastMindist => {
                need(ambient, "--field or --q with --n")?;
                need(self.subspace.is_some(), "--subspace")?;
                need(self.subgroup_order.is_some() != !self.subgroup.is_empty(), "exactly one of --subgroup-order or --subgroup")?;
            }
            Multishot => {
                need(self.field.is_some(), "--field")?;
                need(!self.series.is_empty(), "--series")?;
                let kind = self.alphabet.ok_or(format!("{} requires --alphabet", cmd.as_str()))?;
                match kind {
                    AlphabetKind::Orbit => need(self.subspace.is_some(), "--subspace for an orbit alphabet")?,
                    _ => need(self.k.is_some(), "--k for this alphabet")?,
                }
                if !self.components.is_empty() {
                    need(self.distance.is_some(), "--distance with --component")?;
                    need(self.m.is_some(), "--m with --component")?;
                }
            }
            ReproducePaper => {}
        }
        let csv_ok = matches!(cmd, Orbit | Spread | Partition | Multishot);
        match self.format() {
            Format::Csv if !csv_ok => Err(format!("{} has no distance table for CSV output", cmd.as_str())),
            Format::Text if cmd != ReproducePaper => Err("text output is only available for reproduce-paper".into()),
            _ => Ok(cmd),
        }
    }
}
