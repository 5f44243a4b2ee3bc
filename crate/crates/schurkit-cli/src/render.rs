//! Deterministic rendering of a ParMat diagram: bottom vertices, straight
//! legs labeled with thickness and dot packets, straight red strands.

use schurkit::parmat::ParMat;

/// Anchor columns for the affine word layout of a multicomposition: one
/// anchor per thick strand and one per red strand separator.
struct Anchors {
    /// column of each flat thick strand
    thick: Vec<i64>,
    /// column of each red strand (u₁, u₂, …)
    red: Vec<i64>,
}

const STEP: i64 = 8;

fn anchors(mc: &schurkit::combinatorics::MultiComposition) -> Anchors {
    let mut thick = Vec::new();
    let mut red = Vec::new();
    let mut x = 4i64;
    for (c, comp) in mc.comps.iter().enumerate() {
        if c > 0 {
            red.push(x);
            x += STEP;
        }
        for _ in comp {
            thick.push(x);
            x += STEP;
        }
    }
    Anchors { thick, red }
}

fn packet_label(eta: &schurkit::combinatorics::Partition) -> String {
    if eta.0.is_empty() {
        String::new()
    } else {
        let parts: Vec<String> = eta.0.iter().map(u32::to_string).collect();
        format!("({})", parts.join(","))
    }
}

pub fn ascii(x: &ParMat) -> String {
    let top = anchors(&x.top);
    let bot = anchors(&x.bot);
    let height = 9usize; // label, 7 strand rows, label
    let width = {
        let all = top
            .thick
            .iter()
            .chain(&top.red)
            .chain(&bot.thick)
            .chain(&bot.red);
        (all.max().copied().unwrap_or(0) + STEP) as usize
    };
    let mut grid = vec![vec![b' '; width]; height];
    fn put(grid: &mut [Vec<u8>], width: usize, r: usize, c: i64, s: &str) {
        for (k, ch) in s.bytes().enumerate() {
            let cc = c.max(0) as usize + k;
            if cc < width {
                grid[r][cc] = ch;
            }
        }
    }

    // vertex labels
    let tops = x.top.flatten();
    let bots = x.bot.flatten();
    for (i, w) in tops.iter().enumerate() {
        put(&mut grid, width, 0, top.thick[i] - 1, &format!("[{w}]"));
    }
    for (j, w) in bots.iter().enumerate() {
        put(&mut grid, width, height - 1, bot.thick[j] - 1, &format!("[{w}]"));
    }
    for (k, c) in top.red.iter().enumerate() {
        put(&mut grid, width, 0, c - 1, &format!("u{}", k + 1));
    }
    for (k, c) in bot.red.iter().enumerate() {
        put(&mut grid, width, height - 1, c - 1, &format!("u{}", k + 1));
    }

    // red strands: straight lines between matching separators
    for (&ct, &cb) in top.red.iter().zip(&bot.red) {
        for r in 1..height - 1 {
            let f = (r - 1) as f64 / (height - 2) as f64;
            let c = ct as f64 + f * (cb - ct) as f64;
            let cc = c.round() as usize;
            if cc < width {
                grid[r][cc] = b':';
            }
        }
    }

    // legs, bottom-left to top, in row-major order
    for i in 0..x.a.nrows() {
        for j in 0..x.a.ncols() {
            let a = x.a.0[i][j];
            if a == 0 {
                continue;
            }
            let (ct, cb) = (top.thick[i], bot.thick[j]);
            for r in 1..height - 1 {
                let f = (r - 1) as f64 / (height - 2) as f64;
                let c = ct as f64 + f * (cb - ct) as f64;
                let cc = c.round() as usize;
                if cc < width {
                    grid[r][cc] = if ct == cb {
                        b'|'
                    } else if ct < cb {
                        b'\\'
                    } else {
                        b'/'
                    };
                }
            }
            // thickness and packet at the midpoint, biased by the column
            let mid_c = (ct + cb) / 2 + 1;
            let eta = packet_label(&x.p[i][j]);
            put(&mut grid, width, 4, mid_c, &format!("{a}{eta}"));
        }
    }

    let mut out = String::new();
    for row in grid {
        let line = String::from_utf8(row).unwrap();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn svg(x: &ParMat) -> String {
    let top = anchors(&x.top);
    let bot = anchors(&x.bot);
    let scale = 10i64;
    let (y_top, y_bot) = (20i64, 120i64);
    let width = top
        .thick
        .iter()
        .chain(&top.red)
        .chain(&bot.thick)
        .chain(&bot.red)
        .max()
        .copied()
        .unwrap_or(0)
        * scale
        + 60;
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"140\">\n"
    ));
    let line = |s: &mut String, x1: i64, y1: i64, x2: i64, y2: i64, color: &str| {
        s.push_str(&format!(
            "  <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"{color}\"/>\n"
        ));
    };
    let text = |s: &mut String, x: i64, y: i64, t: &str| {
        s.push_str(&format!(
            "  <text x=\"{x}\" y=\"{y}\" font-size=\"10\">{t}</text>\n"
        ));
    };
    for (k, (&ct, &cb)) in top.red.iter().zip(&bot.red).enumerate() {
        line(&mut s, ct * scale, y_top, cb * scale, y_bot, "red");
        text(&mut s, ct * scale - 4, y_top - 6, &format!("u{}", k + 1));
    }
    let tops = x.top.flatten();
    let bots = x.bot.flatten();
    for (i, w) in tops.iter().enumerate() {
        text(&mut s, top.thick[i] * scale - 4, y_top - 6, &format!("[{w}]"));
    }
    for (j, w) in bots.iter().enumerate() {
        text(
            &mut s,
            bot.thick[j] * scale - 4,
            y_bot + 12,
            &format!("[{w}]"),
        );
    }
    for i in 0..x.a.nrows() {
        for j in 0..x.a.ncols() {
            let a = x.a.0[i][j];
            if a == 0 {
                continue;
            }
            let (xt, xb) = (top.thick[i] * scale, bot.thick[j] * scale);
            line(&mut s, xt, y_top, xb, y_bot, "black");
            let eta = packet_label(&x.p[i][j]);
            text(
                &mut s,
                (xt + xb) / 2 + 3,
                (y_top + y_bot) / 2,
                &format!("{a}{eta}"),
            );
        }
    }
    s.push_str("</svg>\n");
    s
}
