//! The bundled data files, read either from the copy compiled into the
//! binary or from a directory with the same file names.

use std::collections::BTreeMap;
use std::path::Path;

use quandle_core::constructions::FiniteGroup;
use quandle_core::io::{parse_cyc, parse_grp, parse_qnd, QuandleFile};
use quandle_core::knots::{parse_diagram, KnotDiagram};
use quandle_core::Cochain;

macro_rules! bundle {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../data/", $name)))),*]
    };
}

pub const FILES: &[(&str, &str)] = bundle!(
    "r3.qnd",
    "r4.qnd",
    "r5.qnd",
    "r7.qnd",
    "qs4.qnd",
    "qs6.qnd",
    "rtilde3.qnd",
    "s4.grp",
    "qs4-phi.cyc",
    "theta3.cyc",
    "theta5.cyc",
    "theta7.cyc",
    "not-a-cocycle.cyc",
    "unknot.pdq",
    "trefoil.pdq",
    "mirror-trefoil.pdq",
    "figure-eight.pdq",
    "trefoil-r1.pdq",
    "trefoil-r2.pdq",
);

pub struct Corpus {
    /// file name -> contents, or why it could not be read
    files: BTreeMap<String, Result<String, String>>,
}

impl Corpus {
    pub fn builtin() -> Self {
        Corpus { files: FILES.iter().map(|(n, t)| (n.to_string(), Ok(t.to_string()))).collect() }
    }

    pub fn from_dir(dir: &Path) -> Self {
        let files = FILES
            .iter()
            .map(|(n, _)| {
                let path = dir.join(n);
                (n.to_string(), std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display())))
            })
            .collect();
        Corpus { files }
    }

    pub fn text(&self, name: &str) -> Result<&str, String> {
        match self.files.get(name) {
            Some(Ok(t)) => Ok(t),
            Some(Err(e)) => Err(e.clone()),
            None => Err(format!("{name} is not part of the corpus")),
        }
    }

    pub fn quandle(&self, name: &str) -> Result<QuandleFile, String> {
        parse_qnd(self.text(name)?).map_err(|e| format!("{name}: {e}"))
    }

    pub fn group(&self, name: &str) -> Result<FiniteGroup, String> {
        parse_grp(self.text(name)?).map_err(|e| format!("{name}: {e}"))
    }

    pub fn cochain(&self, name: &str) -> Result<Cochain, String> {
        parse_cyc(self.text(name)?).map_err(|e| format!("{name}: {e}"))
    }

    pub fn diagram(&self, name: &str) -> Result<KnotDiagram, String> {
        parse_diagram(self.text(name)?).map_err(|e| format!("{name}: {e}"))
    }

    pub fn quandle_names() -> impl Iterator<Item = &'static str> {
        FILES.iter().map(|f| f.0).filter(|n| n.ends_with(".qnd"))
    }
}
