//! Deterministic SVG rendering of torus colorings.
//!
//! [`render_torus_svg`] draws the `m x n` grid with row 0 at the bottom,
//! one filled square per vertex labeled with its color id, and the wrap
//! edges as staggered links routed outside the grid: row wraps around the
//! bottom, column wraps over the top and down the left side. All
//! coordinates are integers computed from `(m, n)` alone, so a given
//! document always renders to the same bytes.

use crate::verify::ColoringDoc;
use crate::{Error, Result};

/// Fixed colorblind-safe fills for color ids 1 through 6.
pub const SVG_PALETTE: [&str; 6] =
    ["#0072B2", "#E69F00", "#009E73", "#D55E00", "#56B4E9", "#F0E442"];

const CELL: usize = 36;

/// Renders a torus coloring document to SVG text.
///
/// The document must carry torus dimensions; colorings of arbitrary graphs
/// have no grid layout to draw. Color ids beyond the fixed 6-color palette
/// are rejected.
pub fn render_torus_svg(doc: &ColoringDoc) -> Result<String> {
    let (Some(m), Some(n)) = (doc.m, doc.n) else {
        return Err(Error::domain(
            "rendering requires a torus coloring with m and n dimensions",
        ));
    };
    if m * n != doc.colors.len() {
        return Err(Error::domain(format!(
            "torus dimensions {m}x{n} disagree with {} colors",
            doc.colors.len()
        )));
    }
    if let Some(&bad) = doc.colors.iter().find(|&&c| c < 1 || c as usize > SVG_PALETTE.len()) {
        return Err(Error::domain(format!(
            "color id {bad} outside the fixed {}-color palette",
            SVG_PALETTE.len()
        )));
    }

    // Margin wide enough for every staggered wrap channel.
    let margin = 16 + 4 * (m + n);
    let grid_w = n * CELL;
    let grid_h = m * CELL;
    let width = 2 * margin + grid_w;
    let height = 2 * margin + grid_h;

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n"
    ));

    // Wrap edges first so the cells paint over their endpoints.
    for r in 0..m {
        // Row r wraps between columns n-1 and 0, around the bottom.
        let y = margin + (m - 1 - r) * CELL + CELL / 2;
        let depth = 6 + 4 * r;
        let right = margin + grid_w;
        let bottom = margin + grid_h + depth;
        svg.push_str(&format!(
            "  <path d=\"M {right} {y} L {} {y} L {} {bottom} L {} {bottom} L {} {y} \
             L {margin} {y}\" fill=\"none\" stroke=\"#666666\" stroke-width=\"2\" \
             stroke-linejoin=\"round\"/>\n",
            right + depth,
            right + depth,
            margin - depth,
            margin - depth,
        ));
    }
    for c in 0..n {
        // Column c wraps between rows m-1 (top) and 0 (bottom), over the
        // top and down the left, staggered past the row channels.
        let x = margin + c * CELL + CELL / 2;
        let top_depth = 6 + 4 * c;
        let side_depth = 6 + 4 * (m + c);
        let top = margin - top_depth;
        let bottom = margin + grid_h + side_depth;
        svg.push_str(&format!(
            "  <path d=\"M {x} {margin} L {x} {top} L {} {top} L {} {bottom} L {x} {bottom} \
             L {x} {}\" fill=\"none\" stroke=\"#666666\" stroke-width=\"2\" \
             stroke-linejoin=\"round\"/>\n",
            margin - side_depth,
            margin - side_depth,
            margin + grid_h,
        ));
    }

    for r in 0..m {
        for c in 0..n {
            let color = doc.colors[r * n + c];
            let fill = SVG_PALETTE[(color - 1) as usize];
            let x = margin + c * CELL;
            let y = margin + (m - 1 - r) * CELL;
            svg.push_str(&format!(
                "  <rect x=\"{x}\" y=\"{y}\" width=\"{CELL}\" height=\"{CELL}\" \
                 fill=\"{fill}\" stroke=\"#333333\" stroke-width=\"1\"/>\n"
            ));
            svg.push_str(&format!(
                "  <text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"14\" \
                 text-anchor=\"middle\" fill=\"#000000\">{color}</text>\n",
                x + CELL / 2,
                y + CELL / 2 + 5,
            ));
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiles::catalog_tile;
    use std::collections::BTreeSet;

    fn distinct_fills(svg: &str) -> BTreeSet<&str> {
        svg.match_indices("<rect")
            .map(|(i, _)| {
                let rest = &svg[i..];
                let start = rest.find("fill=\"").unwrap() + 6;
                &rest[start..start + 7]
            })
            .collect()
    }

    // --- happy path ------------------------------------------------------------

    #[test]
    fn six_color_grid_uses_six_fills() {
        let doc = catalog_tile("Fig1").unwrap().to_doc();
        let svg = render_torus_svg(&doc).unwrap();
        assert_eq!(distinct_fills(&svg).len(), 6);
    }

    #[test]
    fn five_color_grid_uses_at_most_five_fills() {
        let doc = catalog_tile("Fig3(ii)").unwrap().to_doc();
        let svg = render_torus_svg(&doc).unwrap();
        assert!(distinct_fills(&svg).len() <= 5);
    }

    #[test]
    fn output_has_one_rect_per_cell_and_one_link_per_wrap() {
        let doc = catalog_tile("Fig2(i)").unwrap().to_doc(); // 3 x 4
        let svg = render_torus_svg(&doc).unwrap();
        assert_eq!(svg.matches("<rect").count(), 12);
        assert_eq!(svg.matches("<path").count(), 3 + 4);
        assert_eq!(svg.matches("<text").count(), 12);
        assert!(svg.starts_with("<?xml version=\"1.0\""));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn rendering_is_byte_stable() {
        let doc = catalog_tile("Fig4(iv)").unwrap().to_doc();
        assert_eq!(render_torus_svg(&doc).unwrap(), render_torus_svg(&doc).unwrap());
    }

    #[test]
    fn bottom_row_is_drawn_lowest() {
        // Row 0, column 0 of Fig2(i) holds color 1; its rect must sit at a
        // larger y (lower on screen) than the top row's rect.
        let doc = catalog_tile("Fig2(i)").unwrap().to_doc();
        let svg = render_torus_svg(&doc).unwrap();
        let margin = 16 + 4 * (3 + 4);
        let bottom_y = margin + 2 * CELL;
        assert!(svg.contains(&format!("x=\"{margin}\" y=\"{bottom_y}\"")));
    }

    // --- rejections ----------------------------------------------------------------

    #[test]
    fn non_torus_documents_are_rejected() {
        let doc = ColoringDoc {
            m: None,
            n: None,
            k: 3,
            colors: vec![1, 2, 3],
            source: None,
            plan: None,
        };
        assert!(matches!(render_torus_svg(&doc), Err(Error::Domain(_))));
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let doc = ColoringDoc {
            m: Some(3),
            n: Some(4),
            k: 2,
            colors: vec![1, 2],
            source: None,
            plan: None,
        };
        assert!(matches!(render_torus_svg(&doc), Err(Error::Domain(_))));
    }

    #[test]
    fn colors_beyond_the_palette_are_rejected() {
        let doc = ColoringDoc {
            m: Some(3),
            n: Some(3),
            k: 9,
            colors: vec![1, 2, 3, 4, 5, 6, 7, 8, 9],
            source: None,
            plan: None,
        };
        assert!(matches!(render_torus_svg(&doc), Err(Error::Domain(_))));
    }
}
