//! The `.szlam` document format and SVG rendering.
//!
//! A document is line oriented; `#` starts a comment.
//!
//! ```text
//! szlam/1 coloring
//! space periodic1d period 6
//! class green = [0,3)
//! class yellow = [3,5)
//! class white = [5,6)
//! ```
//!
//! Szlam documents hold one `set` line and `f` lines; certificate documents
//! hold a coloring plus `ordering` and `t` lines. Cellular documents use
//! `space hexquot diameter D` and cell sets such as `{0,3,5}`.

mod parse;
mod serialize;
mod svg;

use std::fmt;

pub use parse::{parse, ParseError};
pub use serialize::serialize;
pub use svg::render_svg;

use crate::cellular::HexSpace;
use crate::dominance::DominanceCertificate;
use crate::space::{PeriodicLine, SetSpace};
use crate::szlam::{Coloring, SzlamData};

pub const FORMAT_TAG: &str = "szlam/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Coloring,
    Szlam,
    Certificate,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Coloring => "coloring",
            Kind::Szlam => "szlam",
            Kind::Certificate => "certificate",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A coloring together with a certificate for it.
#[derive(Clone, Debug, PartialEq)]
pub struct CertificateDoc<S: SetSpace> {
    pub coloring: Coloring<S>,
    /// Translaters are canonical.
    pub certificate: DominanceCertificate<S::Shift>,
    /// The translaters as originally written, when that differs from the
    /// canonical form.
    pub given: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Body<S: SetSpace> {
    Coloring(Coloring<S>),
    Szlam(SzlamData<S>),
    Certificate(CertificateDoc<S>),
}

impl<S: SetSpace> Body<S> {
    pub fn kind(&self) -> Kind {
        match self {
            Body::Coloring(_) => Kind::Coloring,
            Body::Szlam(_) => Kind::Szlam,
            Body::Certificate(_) => Kind::Certificate,
        }
    }

    pub fn space(&self) -> &S {
        match self {
            Body::Coloring(c) => c.space(),
            Body::Szlam(d) => d.space(),
            Body::Certificate(c) => c.coloring.space(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Line(Body<PeriodicLine>),
    Hex(Body<HexSpace>),
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::Line(b) => b.kind(),
            Document::Hex(b) => b.kind(),
        }
    }
}

/// Spaces with a textual form.
pub trait DocSpace: SetSpace {
    /// The `space` line, without the keyword.
    fn space_line(&self) -> String;
    fn format_set(&self, set: &Self::Set) -> String;
    fn format_shift(&self, t: &Self::Shift) -> String;
    /// A shift written the way `t` and `f` lines write it.
    fn shift_from_str(&self, text: &str) -> Option<Self::Shift>;
    fn wrap(body: Body<Self>) -> Document;
    /// The body of `doc` if it lives in this kind of space.
    fn unwrap(doc: Document) -> Option<Body<Self>>;
}

impl DocSpace for PeriodicLine {
    fn space_line(&self) -> String {
        format!("periodic1d period {}", self.period())
    }

    fn format_set(&self, set: &Self::Set) -> String {
        set.to_string()
    }

    fn format_shift(&self, t: &Self::Shift) -> String {
        t.to_string()
    }

    fn shift_from_str(&self, text: &str) -> Option<Self::Shift> {
        crate::exactnum::parse_rational(text)
    }

    fn wrap(body: Body<Self>) -> Document {
        Document::Line(body)
    }

    fn unwrap(doc: Document) -> Option<Body<Self>> {
        match doc {
            Document::Line(b) => Some(b),
            Document::Hex(_) => None,
        }
    }
}

impl DocSpace for HexSpace {
    fn space_line(&self) -> String {
        format!("hexquot diameter {}", self.diameter())
    }

    fn format_set(&self, set: &Self::Set) -> String {
        set.to_string()
    }

    fn format_shift(&self, t: &Self::Shift) -> String {
        t.to_string()
    }

    fn shift_from_str(&self, text: &str) -> Option<Self::Shift> {
        text.trim().parse().ok().filter(|e| *e < self.order())
    }

    fn wrap(body: Body<Self>) -> Document {
        Document::Hex(body)
    }

    fn unwrap(doc: Document) -> Option<Body<Self>> {
        match doc {
            Document::Hex(b) => Some(b),
            Document::Line(_) => None,
        }
    }
}

impl<S: DocSpace> From<Coloring<S>> for Document {
    fn from(c: Coloring<S>) -> Self {
        S::wrap(Body::Coloring(c))
    }
}

impl<S: DocSpace> From<SzlamData<S>> for Document {
    fn from(d: SzlamData<S>) -> Self {
        S::wrap(Body::Szlam(d))
    }
}

impl<S: DocSpace> From<CertificateDoc<S>> for Document {
    fn from(c: CertificateDoc<S>) -> Self {
        S::wrap(Body::Certificate(c))
    }
}
