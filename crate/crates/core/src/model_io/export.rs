//! Wavefront OBJ output for form and force diagrams.
//!
//! The form diagram is one object of `l` polylines, one per bar. The force
//! diagram has one object per dual loop, written as a closed polyline in
//! the loop's own orientation; each `v` record is followed by a `#h` line
//! carrying the fourth coordinate, which OBJ readers skip as a comment.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::chain::FrameGraph;
use crate::error::Result;
use crate::loop_synthesis::{DiagramLoop, DualLoop};
use crate::wedge::LoopPath;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExportOptions {
    /// Write a multi-loop fallback chain as one loop through its shared
    /// anchor where possible.
    pub merge_loops: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExportedFiles {
    pub form: PathBuf,
    pub force: Option<PathBuf>,
}

pub fn form_obj(g: &FrameGraph<f64>) -> String {
    let mut out = String::from("# form diagram\no form\n");
    for n in g.nodes() {
        let p = n.position;
        let _ = writeln!(out, "v {} {} {}", p.x, p.y, p.z);
    }
    for e in g.edges() {
        let t = g.node_position(e.tail).expect("validated graph") + 1;
        let h = g.node_position(e.head).expect("validated graph") + 1;
        let _ = writeln!(out, "# {}\nl {t} {h}", e.id);
    }
    out
}

fn loops_of(d: &DiagramLoop<f64>, opts: ExportOptions) -> Vec<LoopPath<f64>> {
    let chain = match &d.dual {
        DualLoop::Triangle(p) | DualLoop::ZeroArea(p) => return vec![p.clone()],
        DualLoop::Fallback(c) => c,
    };
    if opts.merge_loops {
        if let Some(p) = chain.merge_at_common_vertex() {
            return vec![p];
        }
    }
    let mut out = Vec::new();
    for (k, p) in &chain.terms {
        let oriented = if *k < 0 { p.reversed() } else { p.clone() };
        out.extend(std::iter::repeat_n(oriented, k.unsigned_abs() as usize));
    }
    out
}

pub fn force_obj(loops: &[DiagramLoop<f64>], opts: ExportOptions) -> String {
    let mut out = String::from("# force diagram\n");
    let mut next = 1usize;
    for d in loops {
        let kind = match d.dual {
            DualLoop::Triangle(_) => "triangle",
            DualLoop::ZeroArea(_) => "zero",
            DualLoop::Fallback(_) => "chain",
        };
        for (i, path) in loops_of(d, opts).iter().enumerate() {
            let name = if i == 0 { format!("loop_{}", d.bar) } else { format!("loop_{}_{i}", d.bar) };
            let _ = writeln!(out, "o {name}\n# {kind}");
            for v in path.vertices() {
                let _ = writeln!(out, "v {} {} {}\n#h {}", v.x, v.y, v.z, v.h);
            }
            let n = path.vertices().len();
            let idx: Vec<String> = (next..next + n).chain([next]).map(|i| i.to_string()).collect();
            let _ = writeln!(out, "l {}", idx.join(" "));
            next += n;
        }
    }
    out
}

/// Writes `form.obj`, and `force.obj` when there are loops, into `dir`.
pub fn export_diagrams(
    g: &FrameGraph<f64>,
    loops: &[DiagramLoop<f64>],
    dir: &Path,
    opts: ExportOptions,
) -> Result<ExportedFiles> {
    fs::create_dir_all(dir)?;
    let form = dir.join("form.obj");
    fs::write(&form, form_obj(g))?;
    let force = if loops.is_empty() {
        None
    } else {
        let path = dir.join("force.obj");
        fs::write(&path, force_obj(loops, opts))?;
        Some(path)
    };
    Ok(ExportedFiles { form, force })
}
