//! ASCII braid diagrams, one crossing per row.
//!
//! Strand `k` runs down column `2(k−1)`. A row for `σ_i` puts `/` between
//! strands `i` and `i+1`; a row for `σ_i⁻¹` puts `\`. The over-strand is the
//! one travelling along the stroke from bottom-left to top-right for `/`.

use braid_cosets::word::BraidWord;

pub fn render(w: &BraidWord, strands: usize) -> String {
    let strands = strands.max(w.max_index() as usize + 1).max(2);
    let width = 2 * strands - 1;
    let mut out = String::new();
    let header: Vec<String> = (1..=strands).map(|k| (k % 10).to_string()).collect();
    out.push_str(&header.join(" "));
    out.push('\n');
    let plain: String = (0..width).map(|c| if c % 2 == 0 { '|' } else { ' ' }).collect();
    out.push_str(&plain);
    out.push('\n');
    for l in w.letters() {
        let i = l.index() as usize;
        let mut row: Vec<char> = plain.chars().collect();
        row[2 * (i - 1)] = ' ';
        row[2 * i] = ' ';
        row[2 * i - 1] = if l.is_positive() { '/' } else { '\\' };
        let mut line: String = row.into_iter().collect();
        line.push_str(&format!("   {l}"));
        out.push_str(&line);
        out.push('\n');
        out.push_str(&plain);
        out.push('\n');
    }
    out
}
