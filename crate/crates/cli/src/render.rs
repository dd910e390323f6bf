//! Static SVG drawings of groves, triangles and construction snapshots.

use std::fmt::Write as _;

use grove_forge_core::lattice::{Cell, Lattice, Vertex};
use grove_forge_core::reconstruct::{AuxGraph, RedDual};
use grove_forge_core::{Ast, Grove};

pub const DEFAULT_SCALE: f64 = 40.0;
const MARGIN: f64 = 20.0;

fn num(x: f64) -> String {
    let r = (x * 100.0).round() / 100.0;
    if r == r.trunc() {
        format!("{}", r as i64)
    } else {
        format!("{r}")
    }
}

struct Canvas {
    n: i32,
    scale: f64,
    body: String,
}

impl Canvas {
    fn new(n: i32, scale: f64) -> Self {
        Canvas { n, scale, body: String::new() }
    }

    fn x(&self, v: Vertex) -> f64 {
        f64::from(v.i + self.n) / 2.0 * self.scale
    }

    fn y(&self, v: Vertex) -> f64 {
        f64::from(-v.j) * self.scale
    }

    fn centroid(&self, vs: [Vertex; 3]) -> (f64, f64) {
        let x = vs.iter().map(|&v| self.x(v)).sum::<f64>() / 3.0;
        let y = vs.iter().map(|&v| self.y(v)).sum::<f64>() / 3.0;
        (x, y)
    }

    fn line(&mut self, (x1, y1): (f64, f64), (x2, y2): (f64, f64), class: &str) {
        let _ = writeln!(
            self.body,
            r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            num(x1),
            num(y1),
            num(x2),
            num(y2)
        );
    }

    fn edge(&mut self, a: Vertex, b: Vertex, class: &str) {
        self.line((self.x(a), self.y(a)), (self.x(b), self.y(b)), class);
    }

    fn dot(&mut self, v: Vertex, class: &str) {
        let _ = writeln!(self.body, r#"<circle class="{class}" cx="{}" cy="{}" r="3"/>"#, num(self.x(v)), num(self.y(v)));
    }

    fn label(&mut self, (x, y): (f64, f64), text: &str) {
        let _ = writeln!(self.body, r#"<text x="{}" y="{}">{text}</text>"#, num(x), num(y));
    }

    fn finish(self) -> String {
        let side = f64::from(self.n) * self.scale;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="{}" height="{}">"#,
            num(-MARGIN),
            num(-MARGIN),
            num(side + 2.0 * MARGIN),
            num(side + 2.0 * MARGIN),
            num(side + 2.0 * MARGIN),
            num(side + 2.0 * MARGIN)
        );
        out.push_str(concat!(
            "<style>",
            ".ambient{stroke:#ccc;stroke-width:1}",
            ".black{stroke:#000;stroke-width:3}",
            ".red{stroke:#d00;stroke-width:2}",
            ".vertex{fill:#000}",
            ".redvertex{fill:#d00}",
            "text{font:12px sans-serif;text-anchor:middle;dominant-baseline:middle}",
            "</style>\n"
        ));
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

fn ambient(c: &mut Canvas, lat: &Lattice) {
    for e in &lat.edges {
        c.edge(lat.vertices[e.u], lat.vertices[e.v], "ambient");
    }
}

pub fn grove_svg(lat: &Lattice, g: &Grove, scale: f64) -> String {
    let mut c = Canvas::new(lat.n, scale);
    ambient(&mut c, lat);
    for (a, b) in g.edge_pairs(lat) {
        c.edge(a, b, "black");
    }
    for &v in &lat.vertices {
        c.dot(v, "vertex");
    }
    c.finish()
}

pub fn ast_svg(lat: &Lattice, a: &Ast, scale: f64) -> String {
    let mut c = Canvas::new(lat.n, scale);
    ambient(&mut c, lat);
    for &cell in &lat.cells {
        let at = c.centroid(cell.vertices(lat.n));
        c.label(at, &a.entry(cell).to_string());
    }
    c.finish()
}

/// Black edges and up-triangle entries; red dual edges when given.
pub fn aux_svg(lat: &Lattice, aux: &AuxGraph, red: Option<&RedDual>, scale: f64) -> String {
    let mut c = Canvas::new(lat.n, scale);
    ambient(&mut c, lat);
    for e in aux.black.iter() {
        let (a, b) = lat.edge_endpoints(e);
        c.edge(a, b, "black");
    }
    for (k, up) in lat.ups.iter().enumerate() {
        let at = c.centroid(up.tri.vertices(lat.n));
        c.label(at, &aux.entries[k].to_string());
    }
    for &v in &lat.vertices {
        c.dot(v, "vertex");
    }
    if let Some(red) = red {
        let center = |c: &Canvas, cell: Cell| c.centroid(cell.vertices(lat.n));
        for &(_, a, b) in &red.edges {
            let (pa, pb) = (center(&c, lat.cells[a]), center(&c, lat.cells[b]));
            c.line(pa, pb, "red");
        }
        for &cell in &lat.cells {
            let (x, y) = center(&c, cell);
            let _ = writeln!(c.body, r#"<circle class="redvertex" cx="{}" cy="{}" r="3"/>"#, num(x), num(y));
        }
    }
    c.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_placement() {
        let c = Canvas::new(4, DEFAULT_SCALE);
        assert_eq!(c.x(Vertex::new(-4, 0)), 0.0);
        assert_eq!(c.x(Vertex::new(4, 0)), 160.0);
        assert_eq!(c.y(Vertex::new(0, -4)), 160.0);
        assert_eq!(c.x(Vertex::new(1, -1)), 100.0);
    }

    #[test]
    fn number_format() {
        assert_eq!(num(20.0), "20");
        assert_eq!(num(13.333333), "13.33");
        assert_eq!(num(-20.0), "-20");
    }
}
