use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;

use crate::algebra::{parse_polynomial_at, MonomialOrder, PolyMatrix, Polynomial, Rational, Ring};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::text::{parse_error, split_list, statements};

/// The map from a chart to its parent: parent variable `i` pulls back to
/// `coordinates[i]`.
#[derive(Clone, Debug)]
pub struct ParentMap {
    pub parent: Arc<AffineChart>,
    pub coordinates: Vec<Polynomial>,
}

/// An affine variety `V(I_X)` in named coordinates. Rings are kept in
/// graded reverse lexicographic order; the dimension is computed, never trusted.
#[derive(Clone)]
pub struct AffineChart {
    ring: Arc<Ring>,
    ideal: Ideal,
    dim: i64,
    parent: Option<ParentMap>,
    smooth: OnceLock<bool>,
}

impl fmt::Debug for AffineChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineChart[{}] {:?} dim {}", self.ring.names().join(","), self.ideal, self.dim)
    }
}

impl AffineChart {
    /// Builds a chart; with `declared` set, a disagreeing computed dimension is an error.
    pub fn new(ring: &Arc<Ring>, generators: Vec<Polynomial>, declared: Option<i64>) -> Result<Self> {
        let grevlex = if ring.order() == MonomialOrder::GrevLex {
            ring.clone()
        } else {
            ring.with_order(MonomialOrder::GrevLex)
        };
        for g in &generators {
            if g.ring().names() != grevlex.names() {
                return Err(Error::Context(format!("generator {g} is not over the chart variables")));
            }
        }
        let gens: Vec<Polynomial> = generators.iter().map(|g| g.reorder(&grevlex)).collect();
        let ideal = Ideal::new(&grevlex, gens)?;
        let dim = ideal.dimension();
        if let Some(d) = declared {
            if d != dim {
                return Err(Error::DimensionMismatch {
                    declared: d,
                    computed: dim,
                });
            }
        }
        Ok(AffineChart {
            ring: grevlex,
            ideal,
            dim,
            parent: None,
            smooth: OnceLock::new(),
        })
    }

    /// Attaches a parent map after checking that every parent generator pulls back into `I_X`.
    pub fn with_parent(mut self, parent: ParentMap) -> Result<Self> {
        if parent.coordinates.len() != parent.parent.nvars() {
            return Err(Error::Size(format!(
                "parent map has {} coordinates for {} parent variables",
                parent.coordinates.len(),
                parent.parent.nvars()
            )));
        }
        self.parent = Some(parent);
        if !self.verify_parent_map() {
            return Err(Error::Argument("parent generators do not pull back into the chart ideal".into()));
        }
        Ok(self)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn generators(&self) -> &[Polynomial] {
        self.ideal.generators()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn dim(&self) -> i64 {
        self.dim
    }

    pub fn codim(&self) -> usize {
        if self.dim < 0 {
            self.nvars()
        } else {
            self.nvars() - self.dim as usize
        }
    }

    pub fn is_empty(&self) -> bool {
        self.dim < 0
    }

    pub fn parent(&self) -> Option<&ParentMap> {
        self.parent.as_ref()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.ideal.normal_form(f)
    }

    pub fn is_zero_on(&self, f: &Polynomial) -> bool {
        self.ideal.contains(f)
    }

    pub fn parse_polynomial(&self, text: &str) -> Result<Polynomial> {
        crate::algebra::parse_polynomial(text, &self.ring)
    }

    /// Pulls a polynomial on the parent chart back to this chart.
    pub fn pull_back(&self, f: &Polynomial) -> Result<Polynomial> {
        let p = self
            .parent
            .as_ref()
            .ok_or_else(|| Error::Argument("chart has no parent".into()))?;
        Ok(f.substitute(&p.coordinates, &self.ring))
    }

    pub fn verify_parent_map(&self) -> bool {
        match &self.parent {
            None => true,
            Some(p) => p
                .parent
                .generators()
                .iter()
                .all(|g| self.is_zero_on(&g.substitute(&p.coordinates, &self.ring))),
        }
    }

    /// Rows are the generators, columns the variables.
    pub fn jacobian(&self) -> PolyMatrix {
        let rows: Vec<Vec<Polynomial>> = self
            .generators()
            .iter()
            .map(|g| (0..self.nvars()).map(|v| g.partial_derivative(v).expect("in range")).collect())
            .collect();
        PolyMatrix::new(&self.ring, rows, self.nvars()).expect("rectangular")
    }

    /// `I_X` plus all c×c Jacobian minors.
    pub fn singular_locus(&self) -> Ideal {
        if self.is_empty() {
            return Ideal::unit(&self.ring);
        }
        let jac = self.jacobian();
        let c = self.codim();
        match jac.minors(c) {
            Ok(minors) => self.ideal.with_generators(&minors),
            // fewer equations than the codimension: every point is singular
            Err(_) => self.ideal.clone(),
        }
    }

    /// Jacobian criterion; an empty chart is vacuously smooth (see `is_empty`).
    pub fn is_smooth(&self) -> bool {
        *self.smooth.get_or_init(|| self.singular_locus().is_unit())
    }

    /// `f` is not nilpotent on the chart (`I_X : f^∞` is proper).
    pub fn is_non_nilpotent(&self, f: &Polynomial) -> bool {
        if self.is_zero_on(f) {
            return false;
        }
        match self.ideal.saturate(f) {
            Ok(sat) => !sat.is_unit(),
            Err(_) => false,
        }
    }

    /// Some c×c minor is non-nilpotent on the chart. False signals a
    /// non-reduced or non-equidimensional input, for which the Jacobian
    /// criterion misreports.
    pub fn is_generically_reduced(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        match self.jacobian().minors(self.codim()) {
            Ok(minors) => minors.iter().any(|m| self.is_non_nilpotent(m)),
            Err(_) => false,
        }
    }

    pub fn contains_point(&self, point: &[Rational]) -> bool {
        point.len() == self.nvars() && self.generators().iter().all(|g| g.evaluate(point).is_zero())
    }

    /// Jacobian rank at the point equals the codimension.
    pub fn is_smooth_at(&self, point: &[Rational]) -> bool {
        if !self.contains_point(point) {
            return false;
        }
        let jac = self.jacobian();
        let rows: Vec<Vec<Rational>> = (0..jac.nrows())
            .map(|r| jac.row(r).iter().map(|e| e.evaluate(point)).collect())
            .collect();
        rational_rank(rows) == self.codim()
    }

    /// Text form: `vars ...; ideal ...; dim ...;`, one statement per line.
    pub fn to_text(&self) -> String {
        let gens: Vec<String> = self.generators().iter().map(|g| g.to_string()).collect();
        let ideal = if gens.is_empty() { "0".to_string() } else { gens.join(", ") };
        format!("vars {};\nideal {};\ndim {};\n", self.ring.names().join(" "), ideal, self.dim)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut vars: Option<Arc<Ring>> = None;
        let mut gens: Option<Vec<Polynomial>> = None;
        let mut dim = None;
        for st in statements(text)? {
            let (kw, rest, at) = st.keyword();
            match kw.as_str() {
                "vars" => vars = Some(parse_vars(&rest, at)?),
                "ideal" => {
                    let ring = vars
                        .as_ref()
                        .ok_or_else(|| parse_error(st.head(), "ideal before vars"))?;
                    gens = Some(parse_generators(&rest, at, ring)?);
                }
                "dim" => dim = Some(parse_int(&rest, at)?),
                _ => return Err(parse_error(st.head(), format!("unknown statement '{kw}'"))),
            }
        }
        let ring = vars.ok_or_else(|| parse_error(crate::algebra::Position::start(), "missing vars"))?;
        AffineChart::new(&ring, gens.unwrap_or_default(), dim)
    }
}

/// Parses the body of a `vars` statement.
pub fn parse_vars(body: &str, at: crate::algebra::Position) -> Result<Arc<Ring>> {
    let mut names: Vec<&str> = Vec::new();
    for name in body.split_whitespace() {
        if !name.chars().all(|c| c.is_alphanumeric() || c == '_')
            || name.starts_with(|c: char| c.is_ascii_digit())
        {
            return Err(parse_error(at, format!("invalid variable name '{name}'")));
        }
        if name == "t" {
            return Err(parse_error(at, "'t' is reserved for arc parameters"));
        }
        if names.contains(&name) {
            return Err(parse_error(at, format!("duplicate variable '{name}'")));
        }
        names.push(name);
    }
    if names.is_empty() {
        return Err(parse_error(at, "vars needs at least one variable"));
    }
    Ok(Ring::new(&names, MonomialOrder::GrevLex))
}

/// Parses a comma-separated generator list; `0` alone is the zero ideal.
pub fn parse_generators(body: &str, at: crate::algebra::Position, ring: &Arc<Ring>) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    for (piece, pos) in split_list(body, at) {
        if piece.trim().is_empty() {
            return Err(parse_error(pos, "empty generator"));
        }
        let p = parse_polynomial_at(&piece, ring, pos)?;
        if !p.is_zero() {
            out.push(p);
        }
    }
    Ok(out)
}

pub fn parse_int(body: &str, at: crate::algebra::Position) -> Result<i64> {
    body.trim()
        .parse()
        .map_err(|_| parse_error(at, format!("expected an integer, found '{}'", body.trim())))
}

fn rational_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let mut rank = 0;
    let ncols = rows.first().map_or(0, |r| r.len());
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let pivot = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &pivot;
                for c in col..ncols {
                    let delta = &f * &rows[rank][c];
                    rows[r][c] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}
