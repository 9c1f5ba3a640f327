//! Build ALT and ALP indices over the same landmarks, compare their size,
//! and round-trip them through the binary formats.

use alp::codec::{fingerprint, read_alp_index, read_alt_index, write_alp_index, write_alt_index};
use alp::embedding::IndexStats;
use alp::{
    build_alp_index, build_alt_index, generate, louvain, select_landmarks, EmbeddingMode,
    GenParams, LandmarkMethod, Result,
};

fn main() -> Result<()> {
    let g = generate(
        &GenParams::Grid {
            rows: 100,
            cols: 100,
        },
        0,
    )?;
    let p = louvain(&g, 1, 1e-7)?;
    let landmarks = select_landmarks(&g, &p, LandmarkMethod::Farthest, 2)?;
    let alt = build_alt_index(&g, &landmarks)?;
    let alp = build_alp_index(&g, &p, &landmarks, EmbeddingMode::Exact)?;

    let s = IndexStats::of(&alt, &alp);
    println!("|V| = {}, |L| = {}", s.vertices, s.landmarks);
    println!(
        "ALT: {} entries (|L|·|V|), {} bytes",
        s.alt_entries, s.alt_bytes
    );
    println!(
        "ALP: {} entries (|V| + |L|²), {} bytes",
        s.alp_entries, s.alp_bytes
    );

    let v = 5050;
    let label = alp.label(v);
    println!(
        "vertex {v}: landmark #{} (vertex {}) at distance {}",
        label.landmark,
        alp.landmarks()[label.landmark as usize],
        label.dist
    );

    let induced = build_alp_index(&g, &p, &landmarks, EmbeddingMode::Induced)?;
    let longer = (0..g.vertex_count() as u32)
        .filter(|&v| induced.label(v).dist > alp.label(v).dist)
        .count();
    println!("induced labels longer than exact: {longer}");

    let fp = fingerprint(&g);
    let mut buf = Vec::new();
    write_alt_index(&alt, fp, &mut buf)?;
    let (alt2, fp2) = read_alt_index(buf.as_slice())?;
    println!(
        "ALT file: {} bytes, round trip ok: {}",
        buf.len(),
        alt2 == alt && fp2 == fp
    );
    buf.clear();
    write_alp_index(&alp, fp, &mut buf)?;
    let (alp2, _) = read_alp_index(buf.as_slice())?;
    println!(
        "ALP file: {} bytes, round trip ok: {}",
        buf.len(),
        alp2 == alp
    );
    Ok(())
}
