use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use isodrum_core::conformal::{self, ConformalError, DemoConfig};
use isodrum_core::fem::{self, FemError};
use isodrum_core::geometry::{dv_from_json, dv_to_svg, GeometryError, Tile};
use isodrum_core::graph::{enumerate_dv_graphs, walk_notation, ColorMode, GraphError, GraphFeatures};
use isodrum_core::group::group_from_dv;
use isodrum_core::label::Label;
use isodrum_core::search::{search_pairs, PairReport, SearchError};

use crate::{Common, Format};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Io(String),
    Numerical(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Io(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Io(m) | CliError::Numerical(m) => f.write_str(m),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Graph(g) => g.into(),
            SearchError::Group(g) => CliError::Numerical(g.to_string()),
        }
    }
}

impl From<FemError> for CliError {
    fn from(e: FemError) -> Self {
        match e {
            FemError::RefinementOutOfRange(_) | FemError::InvalidCount { .. } | FemError::TooLarge { .. } => {
                CliError::Input(e.to_string())
            }
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<ConformalError> for CliError {
    fn from(e: ConformalError) -> Self {
        match e {
            ConformalError::InvalidTerms(_) => CliError::Input(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

fn parse_tile(s: &str) -> Result<Tile, CliError> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Input(format!("tile {s:?}: expected three comma-separated lengths")))?;
    let lengths: [f64; 3] =
        parts.try_into().map_err(|_| CliError::Input(format!("tile {s:?}: expected three lengths")))?;
    Tile::new(lengths, Label::ALL).map_err(|e: GeometryError| CliError::Input(format!("tile {s:?}: {e}")))
}

/// Collects output files, honouring `--format`.
struct Outputs<'a> {
    common: &'a Common,
    written: Vec<PathBuf>,
}

impl<'a> Outputs<'a> {
    fn new(common: &'a Common) -> Result<Self, CliError> {
        fs::create_dir_all(&common.out).map_err(|e| CliError::Io(format!("{}: {e}", common.out.display())))?;
        Ok(Outputs { common, written: Vec::new() })
    }

    fn wants(&self, f: Format) -> bool {
        self.common.format.is_empty() || self.common.format.contains(&f)
    }

    fn write(&mut self, f: Format, name: &str, contents: &str) -> Result<(), CliError> {
        if !self.wants(f) {
            return Ok(());
        }
        let path = self.common.out.join(name);
        fs::write(&path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        self.written.push(path);
        Ok(())
    }

    fn summary(&self) -> String {
        match self.written.len() {
            0 => "wrote nothing".to_string(),
            1 => format!("wrote {}", self.written[0].display()),
            k => format!("wrote {k} files to {}", self.common.out.display()),
        }
    }
}

fn elapsed(common: &Common, start: Instant) -> Option<f64> {
    (!common.deterministic).then(|| start.elapsed().as_secs_f64())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data") + "\n"
}

#[derive(Serialize)]
struct Generators {
    a: String,
    b: String,
    c: String,
}

#[derive(Serialize)]
struct VolumeRow {
    index: usize,
    n3: usize,
    nisb: [usize; 3],
    group_order: u128,
    slits: usize,
    walk: String,
    generators: Generators,
    gluing: Vec<(usize, usize, Label)>,
}

#[derive(Serialize)]
struct EnumerateJson {
    n: usize,
    tile: [f64; 3],
    volumes: Vec<VolumeRow>,
    overlap_rejections: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_seconds: Option<f64>,
}

pub fn enumerate(common: &Common, n: usize, tile: &str) -> Result<String, CliError> {
    let start = Instant::now();
    let tile = parse_tile(tile)?;
    let e = enumerate_dv_graphs(&tile, n, ColorMode::TileSymmetry)?;
    let rows: Vec<VolumeRow> = e
        .volumes
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let g = group_from_dv(&v.dv);
            let gen = |k: usize| g.generators()[k].to_string();
            let GraphFeatures { n3, nisb, group_order } = v.features;
            VolumeRow {
                index: i + 1,
                n3,
                nisb,
                group_order,
                slits: v.slits,
                walk: walk_notation(&v.graph),
                generators: Generators { a: gen(0), b: gen(1), c: gen(2) },
                gluing: v.dv.internal_sides().iter().map(|s| (s.a, s.b, s.label)).collect(),
            }
        })
        .collect();

    let mut out = Outputs::new(common)?;
    let mut w = csv_writer();
    w.write_record(["index", "n3", "nisb_alpha", "nisb_beta", "nisb_gamma", "group_order", "slits", "walk", "a", "b", "c"])
        .expect("in-memory write");
    let mut txt = String::from("No.\tN3\tNISB\tOrder\tGraph\tGenerators\n");
    for r in &rows {
        w.write_record([
            r.index.to_string(),
            r.n3.to_string(),
            r.nisb[0].to_string(),
            r.nisb[1].to_string(),
            r.nisb[2].to_string(),
            r.group_order.to_string(),
            r.slits.to_string(),
            r.walk.clone(),
            r.generators.a.clone(),
            r.generators.b.clone(),
            r.generators.c.clone(),
        ])
        .expect("in-memory write");
        txt.push_str(&format!(
            "{}.\t{}\t{},{},{}\t{}\t{}\ta: {} b: {} c: {}\n",
            r.index, r.n3, r.nisb[0], r.nisb[1], r.nisb[2], r.group_order, r.walk, r.generators.a, r.generators.b, r.generators.c
        ));
    }
    out.write(Format::Csv, "enumeration.csv", &csv_finish(w))?;
    out.write(Format::Txt, "enumeration.txt", &txt)?;
    for (i, v) in e.volumes.iter().enumerate() {
        out.write(Format::Svg, &format!("volume_{:03}.svg", i + 1), &dv_to_svg(&v.dv))?;
    }
    let count = rows.len();
    let json = EnumerateJson {
        n,
        tile: tile.lengths(),
        volumes: rows,
        overlap_rejections: e.overlap_rejections,
        elapsed_seconds: elapsed(common, start),
    };
    out.write(Format::Json, "enumeration.json", &to_json(&json))?;
    Ok(format!("{count} volumes of {n} copies; {}", out.summary()))
}

#[derive(Serialize)]
struct SearchJson {
    n: usize,
    tile: [f64; 3],
    tile_symmetric: bool,
    volumes: usize,
    sunada_pairs: usize,
    pairs: Vec<PairReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_seconds: Option<f64>,
}

pub fn isospectral_search(common: &Common, n: usize, tile: &str, tol: f64) -> Result<String, CliError> {
    let start = Instant::now();
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Input(format!("--tol must be positive, got {tol}")));
    }
    let tile = parse_tile(tile)?;
    let e = enumerate_dv_graphs(&tile, n, ColorMode::TileSymmetry)?;
    let pairs = search_pairs(&e, &tile, tol)?;
    let mut out = Outputs::new(common)?;
    let mut k = 0;
    for p in pairs.iter().filter(|p| p.sunada.is_sunada_triple) {
        k += 1;
        out.write(Format::Svg, &format!("pair_{k:02}_first.svg"), &dv_to_svg(&e.volumes[p.first.index - 1].dv))?;
        out.write(Format::Svg, &format!("pair_{k:02}_second.svg"), &dv_to_svg(&e.volumes[p.second.index - 1].dv))?;
    }
    let json = SearchJson {
        n,
        tile: tile.lengths(),
        tile_symmetric: !tile.is_scalene(),
        volumes: e.volumes.len(),
        sunada_pairs: k,
        pairs,
        elapsed_seconds: elapsed(common, start),
    };
    out.write(Format::Json, "search.json", &to_json(&json))?;
    Ok(format!("{} candidate pairs, {k} Sunada pairs among {} volumes; {}", json.pairs.len(), json.volumes, out.summary()))
}

#[derive(Serialize)]
struct SpectrumJson {
    copies: usize,
    tile: [f64; 3],
    refinement: usize,
    unknowns: usize,
    values: Vec<f64>,
    residuals: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_seconds: Option<f64>,
}

pub fn spectrum(common: &Common, dv_path: &Path, refine: usize, k: usize) -> Result<String, CliError> {
    let start = Instant::now();
    let text = fs::read_to_string(dv_path).map_err(|e| CliError::Io(format!("{}: {e}", dv_path.display())))?;
    let dv = dv_from_json(&text).map_err(|e| CliError::Io(format!("{}: {e}", dv_path.display())))?;
    let mesh = fem::mesh_tile(refine)?;
    let (sys, eig) = fem::solve(&dv, refine, k)?;
    let mut out = Outputs::new(common)?;
    out.write(Format::Csv, "eigenvalues.csv", &fem::eigen_table_csv(&eig))?;
    for m in 0..eig.values.len() {
        out.write(Format::Svg, &format!("mode_{:02}.svg", m + 1), &fem::eigenfunction_svg(&dv, &sys, &mesh, m, &eig))?;
    }
    out.write(Format::Json, "mesh.json", &(fem::mesh_to_json(&sys.mesh, &mesh) + "\n"))?;
    let values = eig.values.clone();
    let json = SpectrumJson {
        copies: dv.n_copies(),
        tile: dv.tile().lengths(),
        refinement: refine,
        unknowns: sys.mesh.n_free(),
        values: eig.values,
        residuals: eig.residuals,
        elapsed_seconds: elapsed(common, start),
    };
    out.write(Format::Json, "spectrum.json", &to_json(&json))?;
    let shown: Vec<String> = values.iter().map(|v| format!("{v:.6}")).collect();
    Ok(format!("eigenvalues {}; {}", shown.join(" "), out.summary()))
}

pub fn conformal_demo(common: &Common, terms: usize) -> Result<String, CliError> {
    let start = Instant::now();
    let demo = conformal::run_demo(&DemoConfig { terms, ..DemoConfig::default() })?;
    let mut out = Outputs::new(common)?;
    out.write(Format::Csv, "coefficients.csv", &conformal::coefficients_csv(&demo.report.expansion))?;
    if out.wants(Format::Svg) {
        for (name, svg) in conformal::demo_svgs(&demo, 64)? {
            out.write(Format::Svg, &name, &svg)?;
        }
    }
    let mut metrics = serde_json::to_value(&demo.report).expect("plain data");
    if let Some(t) = elapsed(common, start) {
        metrics["elapsed_seconds"] = t.into();
    }
    out.write(Format::Json, "metrics.json", &to_json(&metrics))?;
    let r = &demo.report;
    Ok(format!(
        "{} terms, residual relL2 {:.4e} relMax {:.4e}, correction ratio {:.3}; {}",
        terms,
        r.expansion_residual.rel_l2,
        r.expansion_residual.rel_max,
        r.correction.ratio,
        out.summary()
    ))
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::Writer::from_writer(Vec::new())
}

fn csv_finish(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}
