//! Reading and writing MPS files.
//!
//! Both the fixed-column layout and whitespace-separated ("free") layout are
//! accepted. A data line is split on whitespace first; when that does not
//! yield a valid field count for its section, the fixed column positions
//! (2–3, 5–12, 15–22, 25–36, 40–47, 50–61) are used instead, which handles
//! names containing blanks.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::lp::{GeneralLP, RowKind, Sense};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MpsError {
    #[error("line {line}: unknown section `{name}`")]
    UnknownSection { line: usize, name: String },
    #[error("line {line}: undeclared row `{name}`")]
    UndeclaredRow { line: usize, name: String },
    #[error("line {line}: undeclared column `{name}`")]
    UndeclaredColumn { line: usize, name: String },
    #[error("line {line}: duplicate row `{name}`")]
    DuplicateRow { line: usize, name: String },
    #[error("no objective (N) row")]
    MissingObjectiveRow,
    #[error("line {line}: malformed number")]
    MalformedNumber { line: usize },
    #[error("line {line}: malformed record")]
    MalformedLine { line: usize },
    #[error("line {line}: data before any section header")]
    DataOutsideSection { line: usize },
    #[error("input is not ASCII text")]
    NotAscii,
    #[error("column `{column}`: unsupported bound kind {kind}")]
    UnsupportedBoundKind { column: String, kind: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MpsRowType {
    N,
    L,
    G,
    E,
}

impl MpsRowType {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "N" => Some(Self::N),
            "L" => Some(Self::L),
            "G" => Some(Self::G),
            "E" => Some(Self::E),
            _ => None,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Self::N => "N",
            Self::L => "L",
            Self::G => "G",
            Self::E => "E",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Up,
    Lo,
    Fx,
    Fr,
    Mi,
    Pl,
    /// Integer-type bounds (`BV`, `LI`, `UI`, `SC`); kept so they can be
    /// reported when converting.
    Integer(String),
}

impl BoundKind {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "UP" => Self::Up,
            "LO" => Self::Lo,
            "FX" => Self::Fx,
            "FR" => Self::Fr,
            "MI" => Self::Mi,
            "PL" => Self::Pl,
            "BV" | "LI" | "UI" | "SC" => Self::Integer(s.to_string()),
            _ => return None,
        })
    }

    fn takes_value(&self) -> bool {
        match self {
            Self::Up | Self::Lo | Self::Fx => true,
            Self::Fr | Self::Mi | Self::Pl => false,
            Self::Integer(k) => k != "BV",
        }
    }

    fn as_str(&self) -> &str {
        match self {
            Self::Up => "UP",
            Self::Lo => "LO",
            Self::Fx => "FX",
            Self::Fr => "FR",
            Self::Mi => "MI",
            Self::Pl => "PL",
            Self::Integer(k) => k,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RhsEntry {
    pub set: String,
    pub row: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundEntry {
    pub kind: BoundKind,
    pub set: String,
    pub column: String,
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MpsDocument {
    pub name: String,
    pub rows: Vec<(MpsRowType, String)>,
    /// `(column, row, value)` in file order; repeated `(column, row)` pairs
    /// are summed into the first occurrence.
    pub columns: Vec<(String, String, f64)>,
    pub rhs: Vec<RhsEntry>,
    pub ranges: Vec<RhsEntry>,
    pub bounds: Vec<BoundEntry>,
    pub objective_sense: Option<Sense>,
    /// `ENDATA` was absent; the file was accepted up to end of input.
    pub missing_endata: bool,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Name,
    ObjSense,
    Rows,
    Columns,
    Rhs,
    Ranges,
    Bounds,
}

/// Parses MPS text.
pub fn parse_mps(input: &[u8]) -> Result<MpsDocument, MpsError> {
    if !input.is_ascii() {
        return Err(MpsError::NotAscii);
    }
    // ASCII input is valid UTF-8.
    let text = std::str::from_utf8(input).map_err(|_| MpsError::NotAscii)?;
    Parser::default().run(text)
}

impl MpsDocument {
    pub fn parse_str(text: &str) -> Result<Self, MpsError> {
        parse_mps(text.as_bytes())
    }

    /// Converts the document to a [`GeneralLP`].
    ///
    /// The first `N` row is the objective; further `N` rows are dropped. Only
    /// the first RHS, RANGES and BOUNDS set is used. Right-hand-side entries
    /// on the objective row are ignored, which is the convention behind the
    /// published Netlib optimum values.
    pub fn to_general_lp(&self) -> Result<GeneralLP, MpsError> {
        self.to_general_lp_with_warnings().map(|(lp, _)| lp)
    }

    /// Like [`to_general_lp`](Self::to_general_lp), also returning notes about
    /// dropped or ignored input.
    pub fn to_general_lp_with_warnings(&self) -> Result<(GeneralLP, Vec<String>), MpsError> {
        let mut warnings = Vec::new();
        let obj_name = self
            .rows
            .iter()
            .find(|(t, _)| *t == MpsRowType::N)
            .map(|(_, n)| n.as_str())
            .ok_or(MpsError::MissingObjectiveRow)?;

        let mut row_index: HashMap<&str, usize> = HashMap::new();
        let mut row_kinds = Vec::new();
        for (t, name) in &self.rows {
            let kind = match t {
                MpsRowType::N => continue,
                MpsRowType::L => RowKind::Le,
                MpsRowType::G => RowKind::Ge,
                MpsRowType::E => RowKind::Eq,
            };
            row_index.insert(name, row_kinds.len());
            row_kinds.push(kind);
        }
        let dropped_n = self.rows.iter().filter(|(t, _)| *t == MpsRowType::N).count() - 1;
        if dropped_n > 0 {
            warnings.push(format!("dropped {dropped_n} extra N row(s)"));
        }

        let mut col_index: HashMap<&str, usize> = HashMap::new();
        let mut col_names = Vec::new();
        for (col, _, _) in &self.columns {
            if !col_index.contains_key(col.as_str()) {
                col_index.insert(col, col_names.len());
                col_names.push(col.as_str());
            }
        }
        for b in &self.bounds {
            if !col_index.contains_key(b.column.as_str()) {
                col_index.insert(&b.column, col_names.len());
                col_names.push(b.column.as_str());
            }
        }

        let m = row_kinds.len();
        let n = col_names.len();
        let mut coeffs = vec![0.0; m * n];
        let mut objective = vec![0.0; n];
        for (col, row, v) in &self.columns {
            let j = col_index[col.as_str()];
            if row == obj_name {
                objective[j] += v;
            } else if let Some(&i) = row_index.get(row.as_str()) {
                coeffs[i * n + j] += v;
            }
        }

        let mut rhs = vec![0.0; m];
        if let Some(set) = self.rhs.first().map(|e| e.set.as_str()) {
            for e in self.rhs.iter().filter(|e| e.set == set) {
                if let Some(&i) = row_index.get(e.row.as_str()) {
                    rhs[i] = e.value;
                } else if e.row == obj_name {
                    warnings.push(format!("ignored objective RHS {}", e.value));
                }
            }
        }
        let mut ranges = vec![None; m];
        if let Some(set) = self.ranges.first().map(|e| e.set.as_str()) {
            for e in self.ranges.iter().filter(|e| e.set == set) {
                if let Some(&i) = row_index.get(e.row.as_str()) {
                    ranges[i] = Some(e.value);
                }
            }
        }

        let mut lower = vec![0.0; n];
        let mut upper = vec![f64::INFINITY; n];
        if let Some(set) = self.bounds.first().map(|b| b.set.as_str()) {
            for b in self.bounds.iter().filter(|b| b.set == set) {
                let j = col_index[b.column.as_str()];
                let v = b.value.unwrap_or(0.0);
                match &b.kind {
                    BoundKind::Up => {
                        if v < 0.0 && lower[j] == 0.0 {
                            lower[j] = f64::NEG_INFINITY;
                            warnings.push(format!("negative UP bound on {}; lower set to -inf", b.column));
                        }
                        upper[j] = v;
                    }
                    BoundKind::Lo => lower[j] = v,
                    BoundKind::Fx => {
                        lower[j] = v;
                        upper[j] = v;
                    }
                    BoundKind::Fr => {
                        lower[j] = f64::NEG_INFINITY;
                        upper[j] = f64::INFINITY;
                    }
                    BoundKind::Mi => lower[j] = f64::NEG_INFINITY,
                    BoundKind::Pl => upper[j] = f64::INFINITY,
                    BoundKind::Integer(k) => {
                        return Err(MpsError::UnsupportedBoundKind {
                            column: b.column.clone(),
                            kind: k.clone(),
                        })
                    }
                }
            }
        }

        let lp = GeneralLP {
            name: self.name.clone(),
            sense: self.objective_sense.unwrap_or(Sense::Minimize),
            num_rows: m,
            num_cols: n,
            row_kinds,
            coeffs,
            objective,
            objective_offset: 0.0,
            rhs,
            ranges,
            lower,
            upper,
        };
        Ok((lp, warnings))
    }

    /// Builds a document describing `lp`, with rows `R1..` and columns `X1..`.
    pub fn from_general_lp(lp: &GeneralLP) -> Self {
        let obj = "OBJ".to_string();
        let mut doc = MpsDocument {
            name: lp.name.clone(),
            objective_sense: (lp.sense == Sense::Maximize).then_some(Sense::Maximize),
            ..Default::default()
        };
        doc.rows.push((MpsRowType::N, obj.clone()));
        let row_name = |i: usize| format!("R{}", i + 1);
        let col_name = |j: usize| format!("X{}", j + 1);
        for (i, kind) in lp.row_kinds.iter().enumerate() {
            let t = match kind {
                RowKind::Eq => MpsRowType::E,
                RowKind::Le => MpsRowType::L,
                RowKind::Ge => MpsRowType::G,
                RowKind::Free => MpsRowType::N,
            };
            doc.rows.push((t, row_name(i)));
        }
        for j in 0..lp.num_cols {
            let before = doc.columns.len();
            for i in 0..lp.num_rows {
                let v = lp.coeff(i, j);
                if v != 0.0 {
                    doc.columns.push((col_name(j), row_name(i), v));
                }
            }
            // Always declare the column, even when it has no nonzero.
            if lp.objective[j] != 0.0 || doc.columns.len() == before {
                doc.columns.insert(before, (col_name(j), obj.clone(), lp.objective[j]));
            }
        }
        for i in 0..lp.num_rows {
            if lp.rhs[i] != 0.0 {
                doc.rhs.push(RhsEntry {
                    set: "RHS".into(),
                    row: row_name(i),
                    value: lp.rhs[i],
                });
            }
            if let Some(r) = lp.ranges[i] {
                doc.ranges.push(RhsEntry {
                    set: "RNG".into(),
                    row: row_name(i),
                    value: r,
                });
            }
        }
        for j in 0..lp.num_cols {
            let (lo, up) = (lp.lower[j], lp.upper[j]);
            let mut push = |kind, value| {
                doc.bounds.push(BoundEntry {
                    kind,
                    set: "BND".into(),
                    column: col_name(j),
                    value,
                })
            };
            if lo == up {
                push(BoundKind::Fx, Some(lo));
                continue;
            }
            match (lo.is_finite(), up.is_finite()) {
                (false, false) => push(BoundKind::Fr, None),
                (false, true) => {
                    push(BoundKind::Mi, None);
                    push(BoundKind::Up, Some(up));
                }
                (true, _) => {
                    if lo != 0.0 {
                        push(BoundKind::Lo, Some(lo));
                    }
                    if up.is_finite() {
                        push(BoundKind::Up, Some(up));
                    }
                }
            }
        }
        doc
    }

    /// Writes the document in free (whitespace-separated) MPS.
    pub fn to_mps_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "NAME          {}", self.name);
        if let Some(sense) = self.objective_sense {
            let s = if sense == Sense::Maximize { "MAX" } else { "MIN" };
            let _ = writeln!(out, "OBJSENSE\n    {s}");
        }
        out.push_str("ROWS\n");
        for (t, name) in &self.rows {
            let _ = writeln!(out, " {}  {}", t.as_str(), name);
        }
        out.push_str("COLUMNS\n");
        for (c, r, v) in &self.columns {
            let _ = writeln!(out, "    {c}  {r}  {v:?}");
        }
        out.push_str("RHS\n");
        for e in &self.rhs {
            let _ = writeln!(out, "    {}  {}  {:?}", e.set, e.row, e.value);
        }
        if !self.ranges.is_empty() {
            out.push_str("RANGES\n");
            for e in &self.ranges {
                let _ = writeln!(out, "    {}  {}  {:?}", e.set, e.row, e.value);
            }
        }
        if !self.bounds.is_empty() {
            out.push_str("BOUNDS\n");
            for b in &self.bounds {
                match b.value {
                    Some(v) => {
                        let _ = writeln!(out, " {} {}  {}  {:?}", b.kind.as_str(), b.set, b.column, v);
                    }
                    None => {
                        let _ = writeln!(out, " {} {}  {}", b.kind.as_str(), b.set, b.column);
                    }
                }
            }
        }
        out.push_str("ENDATA\n");
        out
    }
}

#[derive(Default)]
struct Parser {
    doc: MpsDocument,
    row_names: HashMap<String, MpsRowType>,
    col_names: HashMap<String, ()>,
    entry_index: HashMap<(String, String), usize>,
}

impl Parser {
    fn run(mut self, text: &str) -> Result<MpsDocument, MpsError> {
        let mut section: Option<Section> = None;
        let mut ended = false;
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim_end_matches(['\r', ' ', '\t']);
            if line.is_empty() || line.starts_with('*') {
                continue;
            }
            if !line.starts_with([' ', '\t']) {
                let mut toks = line.split_whitespace();
                let head = toks.next().unwrap_or_default();
                section = Some(match head {
                    "NAME" => {
                        self.doc.name = toks.next().unwrap_or_default().to_string();
                        Section::Name
                    }
                    "OBJSENSE" => {
                        if let Some(s) = toks.next() {
                            self.set_sense(s, lineno)?;
                        }
                        Section::ObjSense
                    }
                    "ROWS" => Section::Rows,
                    "COLUMNS" => Section::Columns,
                    "RHS" => Section::Rhs,
                    "RANGES" => Section::Ranges,
                    "BOUNDS" => Section::Bounds,
                    "ENDATA" => {
                        ended = true;
                        break;
                    }
                    other => {
                        return Err(MpsError::UnknownSection {
                            line: lineno,
                            name: other.to_string(),
                        })
                    }
                });
                continue;
            }
            match section {
                None | Some(Section::Name) => {
                    return Err(MpsError::DataOutsideSection { line: lineno })
                }
                Some(Section::ObjSense) => {
                    let s = line.trim();
                    self.set_sense(s, lineno)?;
                }
                Some(Section::Rows) => self.row_line(line, lineno)?,
                Some(Section::Columns) => self.column_line(line, lineno)?,
                Some(Section::Rhs) => self.rhs_line(line, lineno, false)?,
                Some(Section::Ranges) => self.rhs_line(line, lineno, true)?,
                Some(Section::Bounds) => self.bound_line(line, lineno)?,
            }
        }
        if !ended {
            self.doc.missing_endata = true;
            self.doc.warnings.push("missing ENDATA".to_string());
        }
        if !self.doc.rows.iter().any(|(t, _)| *t == MpsRowType::N) {
            return Err(MpsError::MissingObjectiveRow);
        }
        Ok(self.doc)
    }

    fn set_sense(&mut self, s: &str, line: usize) -> Result<(), MpsError> {
        self.doc.objective_sense = Some(match s {
            "MAX" | "MAXIMIZE" => Sense::Maximize,
            "MIN" | "MINIMIZE" => Sense::Minimize,
            _ => return Err(MpsError::MalformedLine { line }),
        });
        Ok(())
    }

    fn row_line(&mut self, line: &str, lineno: usize) -> Result<(), MpsError> {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let (kind, name) = match toks.as_slice() {
            [k, n] => (k.to_string(), n.to_string()),
            _ => {
                let f = fixed_fields(line);
                (f[0].clone(), f[1].clone())
            }
        };
        let kind = MpsRowType::parse(&kind).ok_or(MpsError::MalformedLine { line: lineno })?;
        if name.is_empty() {
            return Err(MpsError::MalformedLine { line: lineno });
        }
        if self.row_names.insert(name.clone(), kind).is_some() {
            return Err(MpsError::DuplicateRow { line: lineno, name });
        }
        self.doc.rows.push((kind, name));
        Ok(())
    }

    fn column_line(&mut self, line: &str, lineno: usize) -> Result<(), MpsError> {
        if line.contains("'MARKER'") {
            self.doc.warnings.push(format!("line {lineno}: integer marker ignored"));
            return Ok(());
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let fields: Vec<String> = if toks.len() == 3 || toks.len() == 5 {
            toks.iter().map(|s| s.to_string()).collect()
        } else {
            let f = fixed_fields(line);
            let mut v = vec![f[1].clone(), f[2].clone(), f[3].clone()];
            if !f[4].is_empty() {
                v.push(f[4].clone());
                v.push(f[5].clone());
            }
            v
        };
        if fields.len() < 3 || fields[0].is_empty() {
            return Err(MpsError::MalformedLine { line: lineno });
        }
        let col = fields[0].clone();
        self.col_names.insert(col.clone(), ());
        for pair in fields[1..].chunks(2) {
            let [row, value] = pair else {
                return Err(MpsError::MalformedLine { line: lineno });
            };
            let value = parse_number(value, lineno)?;
            self.require_row(row, lineno)?;
            let key = (col.clone(), row.clone());
            if let Some(&at) = self.entry_index.get(&key) {
                self.doc.columns[at].2 += value;
                self.doc
                    .warnings
                    .push(format!("line {lineno}: duplicate entry ({col}, {row}) summed"));
            } else {
                self.entry_index.insert(key, self.doc.columns.len());
                self.doc.columns.push((col.clone(), row.clone(), value));
            }
        }
        Ok(())
    }

    fn rhs_line(&mut self, line: &str, lineno: usize, ranges: bool) -> Result<(), MpsError> {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let (set, pairs): (String, Vec<String>) = match toks.len() {
            3 | 5 => (toks[0].to_string(), toks[1..].iter().map(|s| s.to_string()).collect()),
            // Set name omitted.
            2 | 4 if parse_number(toks[1], lineno).is_ok() => {
                (String::new(), toks.iter().map(|s| s.to_string()).collect())
            }
            _ => {
                let f = fixed_fields(line);
                let mut v = vec![f[2].clone(), f[3].clone()];
                if !f[4].is_empty() {
                    v.push(f[4].clone());
                    v.push(f[5].clone());
                }
                (f[1].clone(), v)
            }
        };
        for pair in pairs.chunks(2) {
            let [row, value] = pair else {
                return Err(MpsError::MalformedLine { line: lineno });
            };
            let value = parse_number(value, lineno)?;
            self.require_row(row, lineno)?;
            let entry = RhsEntry {
                set: set.clone(),
                row: row.clone(),
                value,
            };
            if ranges {
                if self.row_names[row] == MpsRowType::N {
                    self.doc.warnings.push(format!("line {lineno}: range on N row ignored"));
                    continue;
                }
                self.doc.ranges.push(entry);
            } else {
                self.doc.rhs.push(entry);
            }
        }
        Ok(())
    }

    fn bound_line(&mut self, line: &str, lineno: usize) -> Result<(), MpsError> {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let kind_tok = toks.first().copied().unwrap_or_default();
        let kind = BoundKind::parse(kind_tok).ok_or(MpsError::MalformedLine { line: lineno })?;
        let with_value = kind.takes_value();
        let (set, column, value) = match (with_value, toks.len()) {
            (true, 4) => (toks[1].to_string(), toks[2].to_string(), Some(toks[3])),
            (true, 3) => (String::new(), toks[1].to_string(), Some(toks[2])),
            (false, 3) => (toks[1].to_string(), toks[2].to_string(), None),
            // Some writers emit a dummy value after BV/FR/MI/PL.
            (false, 4) => (toks[1].to_string(), toks[2].to_string(), None),
            (false, 2) => (String::new(), toks[1].to_string(), None),
            _ => {
                let f = fixed_fields(line);
                let v = if with_value { Some(f[3].as_str()) } else { None };
                let value = v.map(|s| parse_number(s, lineno)).transpose()?;
                return self.push_bound(kind, f[1].clone(), f[2].clone(), value, lineno);
            }
        };
        let value = value.map(|s| parse_number(s, lineno)).transpose()?;
        self.push_bound(kind, set, column, value, lineno)
    }

    fn push_bound(
        &mut self,
        kind: BoundKind,
        set: String,
        column: String,
        value: Option<f64>,
        lineno: usize,
    ) -> Result<(), MpsError> {
        if !self.col_names.contains_key(&column) {
            return Err(MpsError::UndeclaredColumn { line: lineno, name: column });
        }
        self.doc.bounds.push(BoundEntry {
            kind,
            set,
            column,
            value,
        });
        Ok(())
    }

    fn require_row(&self, row: &str, line: usize) -> Result<(), MpsError> {
        if self.row_names.contains_key(row) {
            Ok(())
        } else {
            Err(MpsError::UndeclaredRow {
                line,
                name: row.to_string(),
            })
        }
    }
}

fn parse_number(s: &str, line: usize) -> Result<f64, MpsError> {
    let t = s.trim();
    t.parse::<f64>()
        .or_else(|_| t.replace(['D', 'd'], "E").parse::<f64>())
        .ok()
        .filter(|v| !v.is_nan())
        .ok_or(MpsError::MalformedNumber { line })
}

/// Splits a line at the fixed MPS field positions.
fn fixed_fields(line: &str) -> [String; 6] {
    const SPANS: [(usize, usize); 6] = [(1, 3), (4, 12), (14, 22), (24, 36), (39, 47), (49, 61)];
    SPANS.map(|(a, b)| {
        let end = b.min(line.len());
        if a >= end {
            String::new()
        } else {
            line[a..end].trim().to_string()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "NAME T
ROWS
 N COST
 L LIM1
COLUMNS
    X1 COST 1.0 LIM1 1.0
RHS
    R LIM1 4.0
ENDATA
";

    #[test]
    fn minimal_document() {
        let doc = MpsDocument::parse_str(MINIMAL).unwrap();
        assert_eq!(doc.name, "T");
        assert_eq!(doc.rows.len(), 2);
        assert_eq!(doc.columns.len(), 2);
        assert_eq!(doc.rhs[0].value, 4.0);
        assert!(!doc.missing_endata);

        let lp = doc.to_general_lp().unwrap();
        assert_eq!((lp.num_rows, lp.num_cols), (1, 1));
        assert_eq!(lp.sense, Sense::Minimize);
        assert_eq!(lp.row_kinds, vec![RowKind::Le]);
        assert_eq!(lp.coeffs, vec![1.0]);
        assert_eq!(lp.objective, vec![1.0]);
        assert_eq!(lp.rhs, vec![4.0]);
    }

    #[test]
    fn missing_endata_is_a_warning() {
        let text = MINIMAL.replace("ENDATA\n", "");
        let doc = MpsDocument::parse_str(&text).unwrap();
        assert!(doc.missing_endata);
        assert!(!doc.warnings.is_empty());
    }

    #[test]
    fn free_and_minus_bounds() {
        let text = MINIMAL.replace("ENDATA", "BOUNDS\n FR BND X1\nENDATA");
        let lp = MpsDocument::parse_str(&text).unwrap().to_general_lp().unwrap();
        assert_eq!((lp.lower[0], lp.upper[0]), (f64::NEG_INFINITY, f64::INFINITY));

        let text = MINIMAL.replace("ENDATA", "BOUNDS\n UP BND X1 3\n MI BND X1\nENDATA");
        let lp = MpsDocument::parse_str(&text).unwrap().to_general_lp().unwrap();
        assert_eq!((lp.lower[0], lp.upper[0]), (f64::NEG_INFINITY, 3.0));
    }

    #[test]
    fn integer_bounds_rejected_on_conversion() {
        let text = MINIMAL.replace("ENDATA", "BOUNDS\n BV BND X1\nENDATA");
        let doc = MpsDocument::parse_str(&text).unwrap();
        assert!(matches!(
            doc.to_general_lp(),
            Err(MpsError::UnsupportedBoundKind { .. })
        ));
    }

    #[test]
    fn error_cases() {
        let undeclared = MINIMAL.replace("LIM1 1.0", "LIM2 1.0");
        assert!(matches!(
            MpsDocument::parse_str(&undeclared),
            Err(MpsError::UndeclaredRow { name, .. }) if name == "LIM2"
        ));
        let dup = MINIMAL.replace(" L LIM1\n", " L LIM1\n G LIM1\n");
        assert!(matches!(MpsDocument::parse_str(&dup), Err(MpsError::DuplicateRow { .. })));
        let no_obj = MINIMAL.replace(" N COST\n", "").replace("COST 1.0 ", "");
        assert_eq!(MpsDocument::parse_str(&no_obj), Err(MpsError::MissingObjectiveRow));
        let bad = MINIMAL.replace("4.0", "4.x");
        assert_eq!(MpsDocument::parse_str(&bad), Err(MpsError::MalformedNumber { line: 8 }));
        let unknown = MINIMAL.replace("RHS\n", "SOS\n");
        assert!(matches!(MpsDocument::parse_str(&unknown), Err(MpsError::UnknownSection { .. })));
    }

    #[test]
    fn fixed_columns_with_blank_names() {
        let text = "\
NAME          FIXED
ROWS
 N  COST
 E  ROW A
COLUMNS
    X ONE     COST               2.0   ROW A              1.0
RHS
    RHS       ROW A        3.0
ENDATA
";
        let doc = MpsDocument::parse_str(text).unwrap();
        assert_eq!(doc.rows[1].1, "ROW A");
        assert_eq!(doc.columns[1], ("X ONE".into(), "ROW A".into(), 1.0));
        assert_eq!(doc.rhs[0].value, 3.0);
    }

    #[test]
    fn duplicates_summed_and_extra_n_rows_dropped() {
        let text = "NAME D
ROWS
 N COST
 N OTHER
 E R1
COLUMNS
    X1 R1 1.0
    X1 R1 2.0
    X1 OTHER 5.0
RHS
    RHS R1 3.0
ENDATA
";
        let doc = MpsDocument::parse_str(text).unwrap();
        assert_eq!(doc.columns[0].2, 3.0);
        assert_eq!(doc.warnings.len(), 1);
        let lp = doc.to_general_lp().unwrap();
        assert_eq!(lp.num_rows, 1);
        assert_eq!(lp.coeffs, vec![3.0]);
    }

    #[test]
    fn objsense_and_crlf() {
        let text = MINIMAL.replace("ROWS", "OBJSENSE\n    MAX\nROWS").replace('\n', "\r\n");
        let lp = MpsDocument::parse_str(&text).unwrap().to_general_lp().unwrap();
        assert_eq!(lp.sense, Sense::Maximize);
    }

    #[test]
    fn ranges_and_objective_rhs() {
        let text = MINIMAL.replace("ENDATA", "RANGES\n    RNG LIM1 2.5\nENDATA").replace(
            "    R LIM1 4.0",
            "    R LIM1 4.0 COST -7.0",
        );
        let lp = MpsDocument::parse_str(&text).unwrap().to_general_lp().unwrap();
        assert_eq!(lp.ranges, vec![Some(2.5)]);
        assert_eq!(lp.objective_offset, 0.0);
    }

    #[test]
    fn writer_round_trip() {
        let text = MINIMAL.replace("ENDATA", "BOUNDS\n UP BND X1 3.5\n LO BND X1 -1\nENDATA");
        let doc = MpsDocument::parse_str(&text).unwrap();
        let again = MpsDocument::parse_str(&doc.to_mps_string()).unwrap();
        assert_eq!(doc, again);
    }
}
