use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use coherent_core::WaveFunction;
use serde_json::{json, Value};

use crate::config::CliError;

pub const TOOL: &str = concat!("coherent ", env!("CARGO_PKG_VERSION"));

pub fn open(out: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::Io(format!("cannot create {}", path.display()), e))?;
            Box::new(BufWriter::new(file))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn io_error(e: io::Error) -> CliError {
    CliError::Io("write failed".into(), e)
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

/// `# key: value` lines.
pub fn write_meta(w: &mut dyn Write, meta: &[(&str, String)]) -> io::Result<()> {
    for (key, value) in meta {
        writeln!(w, "# {key}: {value}")?;
    }
    Ok(())
}

pub fn write_curve_csv(w: &mut dyn Write, psi: &WaveFunction) -> io::Result<()> {
    writeln!(w, "x,re_psi,im_psi,density")?;
    for (x, v) in psi.grid().points().zip(psi.values()) {
        writeln!(
            w,
            "{},{},{},{}",
            float(x),
            float(v.re),
            float(v.im),
            float(v.norm_sqr())
        )?;
    }
    Ok(())
}

pub fn curve_json(psi: &WaveFunction) -> Value {
    let values = psi.values();
    json!({
        "x": psi.grid().points().collect::<Vec<_>>(),
        "re_psi": values.iter().map(|v| v.re).collect::<Vec<_>>(),
        "im_psi": values.iter().map(|v| v.im).collect::<Vec<_>>(),
        "density": values.iter().map(|v| v.norm_sqr()).collect::<Vec<_>>(),
    })
}

pub fn meta_json(meta: &[(&str, String)]) -> Value {
    Value::Object(
        meta.iter()
            .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
            .collect(),
    )
}

pub fn write_json(w: &mut dyn Write, value: &Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, value)?;
    writeln!(w)
}
