use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde_json::{json, Map, Value};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

/// JSON-lines or TSV sink: a schema header, records, a summary footer.
pub struct Report {
    sink: Box<dyn Write>,
    format: Format,
    columns: Option<Vec<String>>,
}

impl Report {
    pub fn open(path: Option<&Path>, format: Format) -> io::Result<Self> {
        let sink: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        Ok(Report { sink, format, columns: None })
    }

    pub fn header(&mut self, command: &str, config: Value) -> io::Result<()> {
        let record = json!({ "schema": SCHEMA, "command": command, "config": config });
        match self.format {
            Format::Json => writeln!(self.sink, "{record}"),
            Format::Tsv => writeln!(self.sink, "# schema: {SCHEMA}\tcommand: {command}\tconfig: {}", record["config"]),
        }
    }

    pub fn record(&mut self, value: Value) -> io::Result<()> {
        match self.format {
            Format::Json => writeln!(self.sink, "{value}"),
            Format::Tsv => self.tsv_row(value),
        }
    }

    pub fn footer(&mut self, summary: Value) -> io::Result<()> {
        match self.format {
            Format::Json => writeln!(self.sink, "{}", json!({ "summary": summary }))?,
            Format::Tsv => writeln!(self.sink, "# summary: {summary}")?,
        }
        self.sink.flush()
    }

    fn tsv_row(&mut self, value: Value) -> io::Result<()> {
        let map = match value {
            Value::Object(map) => map,
            other => Map::from_iter([("value".to_string(), other)]),
        };
        let keys: Vec<String> = map.keys().cloned().collect();
        if self.columns.as_ref() != Some(&keys) {
            writeln!(self.sink, "#{}", keys.join("\t"))?;
            self.columns = Some(keys);
        }
        let cells: Vec<String> = map.values().map(tsv_cell).collect();
        writeln!(self.sink, "{}", cells.join("\t"))
    }
}

fn tsv_cell(v: &Value) -> String {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    };
    text.replace('\t', "\\t").replace('\n', "\\n")
}
