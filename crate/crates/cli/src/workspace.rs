//! Loading algebra and module documents into a name-indexed workspace.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use fed_core::doc::{AlgebraDoc, ModuleDoc};
use fed_core::{AlgebraPresentation, ModuleRep};
use serde_json::Value;
use thiserror::Error;

pub const DEFAULT_CUTOFF: usize = 20;
pub const DEFAULT_SEED: u64 = 0;
pub const FIXTURES_ENV: &str = "FED_FIXTURES_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub cutoff: usize,
    pub seed: u64,
    pub enumeration_limit: usize,
    pub format: Format,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            cutoff: DEFAULT_CUTOFF,
            seed: DEFAULT_SEED,
            enumeration_limit: fed_core::audit::DEFAULT_ENUMERATION_LIMIT,
            format: Format::Text,
        }
    }
}

#[derive(Debug, Error)]
pub enum WorkspaceError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Json {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{}: {message}", location(path, *line))]
    Document {
        path: PathBuf,
        line: Option<usize>,
        message: String,
    },
    #[error("{}: duplicate {kind} name {name:?} (first defined in {})", location(path, *line), first.display())]
    Duplicate {
        path: PathBuf,
        line: Option<usize>,
        kind: &'static str,
        name: String,
        first: PathBuf,
    },
    #[error("{}: module {module:?} refers to unknown algebra {algebra:?}", location(path, *line))]
    UnresolvedAlgebra {
        path: PathBuf,
        line: Option<usize>,
        module: String,
        algebra: String,
    },
}

fn location(path: &Path, line: Option<usize>) -> String {
    match line {
        Some(l) => format!("{}:{l}", path.display()),
        None => path.display().to_string(),
    }
}

#[derive(Clone, Debug)]
pub struct NamedAlgebra {
    pub algebra: Arc<AlgebraPresentation>,
    pub source: PathBuf,
}

#[derive(Clone, Debug)]
pub struct NamedModule {
    pub algebra: String,
    pub module: ModuleRep,
    pub source: PathBuf,
}

#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub algebras: BTreeMap<String, NamedAlgebra>,
    pub modules: BTreeMap<String, NamedModule>,
    pub config: Config,
}

impl Workspace {
    pub fn algebra(&self, name: &str) -> anyhow::Result<&Arc<AlgebraPresentation>> {
        self.algebras
            .get(name)
            .map(|a| &a.algebra)
            .ok_or_else(|| anyhow::anyhow!("no algebra named {name:?} in the workspace"))
    }

    pub fn module(&self, name: &str) -> anyhow::Result<&ModuleRep> {
        self.modules
            .get(name)
            .map(|m| &m.module)
            .ok_or_else(|| anyhow::anyhow!("no module named {name:?} in the workspace"))
    }

    /// Module names over `algebra`, in name order.
    pub fn modules_over(&self, algebra: &str) -> Vec<&str> {
        self.modules
            .iter()
            .filter(|(_, m)| m.algebra == algebra)
            .map(|(n, _)| n.as_str())
            .collect()
    }
}

/// The fixtures directory: the environment override, else `./fixtures`, else
/// the copy shipped next to this crate.
pub fn fixtures_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(FIXTURES_ENV) {
        return PathBuf::from(dir);
    }
    let local = PathBuf::from("fixtures");
    if local.is_dir() {
        return local;
    }
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn collect_files(path: &Path, out: &mut Vec<PathBuf>) -> Result<(), WorkspaceError> {
    let io = |source| WorkspaceError::Io {
        path: path.to_path_buf(),
        source,
    };
    if path.is_dir() {
        let mut entries: Vec<PathBuf> = fs::read_dir(path)
            .map_err(io)?
            .map(|e| e.map(|e| e.path()))
            .collect::<Result<_, _>>()
            .map_err(io)?;
        entries.sort();
        for e in entries {
            if e.is_dir() || e.extension().is_some_and(|x| x == "json") {
                collect_files(&e, out)?;
            }
        }
    } else {
        out.push(path.to_path_buf());
    }
    Ok(())
}

enum Doc {
    Algebra(AlgebraDoc),
    Module(ModuleDoc),
}

struct Located {
    doc: Doc,
    path: PathBuf,
    line: Option<usize>,
}

/// Line of the first `"name": "<name>"` occurrence in `text`.
fn line_of_name(text: &str, name: &str) -> Option<usize> {
    let needle = serde_json::to_string(name).ok()?;
    text.lines().position(|l| l.contains("\"name\"") && l.contains(&needle)).map(|i| i + 1)
}

fn classify(value: Value, path: &Path, text: &str) -> Result<Vec<Located>, WorkspaceError> {
    let items = match value {
        Value::Array(items) => items,
        other => vec![other],
    };
    items
        .into_iter()
        .map(|item| {
            let name = item.get("name").and_then(Value::as_str).unwrap_or("").to_string();
            let line = line_of_name(text, &name);
            let bad = |message: String| WorkspaceError::Document {
                path: path.to_path_buf(),
                line,
                message,
            };
            let doc = if item.get("table").is_some() {
                Doc::Algebra(serde_json::from_value(item).map_err(|e| bad(e.to_string()))?)
            } else if item.get("algebra").is_some() {
                Doc::Module(serde_json::from_value(item).map_err(|e| bad(e.to_string()))?)
            } else {
                return Err(bad("neither an algebra (no \"table\") nor a module (no \"algebra\")".into()));
            };
            Ok(Located {
                doc,
                path: path.to_path_buf(),
                line,
            })
        })
        .collect()
}

/// Reads every document under `paths` (directories recursively, `.json` only)
/// and validates it. An empty list gives an empty workspace.
pub fn parse_workspace(paths: &[PathBuf]) -> Result<Workspace, WorkspaceError> {
    let mut files = Vec::new();
    for p in paths {
        collect_files(p, &mut files)?;
    }
    let mut docs = Vec::new();
    for f in &files {
        let text = fs::read_to_string(f).map_err(|source| WorkspaceError::Io {
            path: f.clone(),
            source,
        })?;
        let value: Value = serde_json::from_str(&text).map_err(|e| WorkspaceError::Json {
            path: f.clone(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        docs.extend(classify(value, f, &text)?);
    }

    let mut ws = Workspace::default();
    let mut modules = Vec::new();
    for Located { doc, path, line } in docs {
        match doc {
            Doc::Algebra(a) => {
                if let Some(prev) = ws.algebras.get(&a.name) {
                    return Err(WorkspaceError::Duplicate {
                        path,
                        line,
                        kind: "algebra",
                        name: a.name,
                        first: prev.source.clone(),
                    });
                }
                let algebra = a.to_algebra().map_err(|e| WorkspaceError::Document {
                    path: path.clone(),
                    line,
                    message: e.to_string(),
                })?;
                ws.algebras.insert(
                    a.name,
                    NamedAlgebra {
                        algebra: Arc::new(algebra),
                        source: path,
                    },
                );
            }
            Doc::Module(m) => modules.push((m, path, line)),
        }
    }
    for (m, path, line) in modules {
        if let Some(prev) = ws.modules.get(&m.name) {
            return Err(WorkspaceError::Duplicate {
                path,
                line,
                kind: "module",
                name: m.name,
                first: prev.source.clone(),
            });
        }
        let Some(a) = ws.algebras.get(&m.algebra) else {
            return Err(WorkspaceError::UnresolvedAlgebra {
                path,
                line,
                module: m.name,
                algebra: m.algebra,
            });
        };
        let module = m.to_module(&a.algebra).map_err(|e| WorkspaceError::Document {
            path: path.clone(),
            line,
            message: e.to_string(),
        })?;
        ws.modules.insert(
            m.name.clone(),
            NamedModule {
                algebra: m.algebra,
                module,
                source: path,
            },
        );
    }
    Ok(ws)
}
