//! Little-endian binary formats for graphs and indices.
//!
//! ```text
//! ALPG  magic "ALPG" | u32 version | u64 n | u64 arcs
//!       | (n+1) × u64 offsets | arcs × u32 targets | arcs × f64 weights
//! ALTX  magic "ALTX" | u32 version | u64 graph fingerprint | u64 n | u64 |L|
//!       | |L| × u32 landmarks | |L|·n × f64 distances, landmark-major
//! ALPX  magic "ALPX" | u32 version | u64 graph fingerprint | u8 mode
//!       | u64 n | u64 |L| | |L| × u32 landmarks
//!       | n × (u32 landmark ordinal, f64 distance) | |L|² × f64 matrix
//! ```

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::embedding::{AlpIndex, AltIndex, EmbeddingMode, Label};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const GRAPH_MAGIC: &[u8; 4] = b"ALPG";
pub const ALT_MAGIC: &[u8; 4] = b"ALTX";
pub const ALP_MAGIC: &[u8; 4] = b"ALPX";
pub const FORMAT_VERSION: u32 = 1;

struct Reader<R> {
    inner: R,
    kind: &'static str,
}

impl<R: Read> Reader<R> {
    fn bytes<const N: usize>(&mut self) -> Result<[u8; N]> {
        let mut buf = [0u8; N];
        self.inner
            .read_exact(&mut buf)
            .map_err(|e| match e.kind() {
                std::io::ErrorKind::UnexpectedEof => Error::format(self.kind, "truncated"),
                _ => Error::Io(e),
            })?;
        Ok(buf)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.bytes::<1>()?[0])
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.bytes()?))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.bytes()?))
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.bytes()?))
    }

    fn len(&mut self, limit: u64) -> Result<usize> {
        let v = self.u64()?;
        if v > limit {
            return Err(Error::format(self.kind, format!("implausible length {v}")));
        }
        Ok(v as usize)
    }

    fn header(&mut self, magic: &[u8; 4]) -> Result<()> {
        if &self.bytes::<4>()? != magic {
            return Err(Error::format(self.kind, "bad magic bytes"));
        }
        let version = self.u32()?;
        if version != FORMAT_VERSION {
            return Err(Error::format(
                self.kind,
                format!("unsupported version {version}"),
            ));
        }
        Ok(())
    }

    fn finish(mut self) -> Result<()> {
        let mut probe = [0u8; 1];
        match self.inner.read(&mut probe)? {
            0 => Ok(()),
            _ => Err(Error::format(self.kind, "trailing bytes")),
        }
    }
}

const MAX_LEN: u64 = 1 << 40;

pub fn write_graph<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    out.write_all(GRAPH_MAGIC)?;
    out.write_all(&FORMAT_VERSION.to_le_bytes())?;
    out.write_all(&(g.vertex_count() as u64).to_le_bytes())?;
    out.write_all(&(g.arc_count() as u64).to_le_bytes())?;
    for &o in g.offsets() {
        out.write_all(&(o as u64).to_le_bytes())?;
    }
    for &t in g.targets() {
        out.write_all(&t.to_le_bytes())?;
    }
    for &w in g.weights() {
        out.write_all(&w.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_graph<R: Read>(input: R) -> Result<Graph> {
    let mut r = Reader {
        inner: input,
        kind: "graph",
    };
    r.header(GRAPH_MAGIC)?;
    let n = r.len(u32::MAX as u64)?;
    let arcs = r.len(MAX_LEN)?;
    let offsets = (0..=n)
        .map(|_| r.u64().map(|o| o as usize))
        .collect::<Result<_>>()?;
    let targets = (0..arcs).map(|_| r.u32()).collect::<Result<_>>()?;
    let weights = (0..arcs).map(|_| r.f64()).collect::<Result<_>>()?;
    r.finish()?;
    Graph::from_csr(offsets, targets, weights)
}

pub fn graph_bytes(g: &Graph) -> Vec<u8> {
    let mut buf = Vec::with_capacity(24 + 8 * (g.vertex_count() + 1) + 12 * g.arc_count());
    write_graph(g, &mut buf).expect("writing to a Vec cannot fail");
    buf
}

/// First eight bytes of the SHA-256 of the graph's binary encoding.
pub fn fingerprint(g: &Graph) -> u64 {
    let digest = Sha256::digest(graph_bytes(g));
    u64::from_le_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
}

pub fn write_alt_index<W: Write>(
    index: &AltIndex,
    graph_fingerprint: u64,
    mut out: W,
) -> Result<()> {
    out.write_all(ALT_MAGIC)?;
    out.write_all(&FORMAT_VERSION.to_le_bytes())?;
    out.write_all(&graph_fingerprint.to_le_bytes())?;
    out.write_all(&(index.vertex_count() as u64).to_le_bytes())?;
    out.write_all(&(index.landmark_count() as u64).to_le_bytes())?;
    for &l in index.landmarks() {
        out.write_all(&l.to_le_bytes())?;
    }
    for i in 0..index.landmark_count() {
        for v in 0..index.vertex_count() as u32 {
            out.write_all(&index.distance(i, v).to_le_bytes())?;
        }
    }
    Ok(())
}

/// Returns the index and the fingerprint of the graph it was built on.
pub fn read_alt_index<R: Read>(input: R) -> Result<(AltIndex, u64)> {
    let mut r = Reader {
        inner: input,
        kind: "ALT index",
    };
    r.header(ALT_MAGIC)?;
    let fp = r.u64()?;
    let n = r.len(u32::MAX as u64)?;
    let k = r.len(u32::MAX as u64)?;
    let landmarks: Vec<u32> = (0..k).map(|_| r.u32()).collect::<Result<_>>()?;
    if landmarks.iter().any(|&l| l as usize >= n) {
        return Err(Error::format("ALT index", "landmark id out of range"));
    }
    let mut table = vec![0.0; n * k];
    for i in 0..k {
        for v in 0..n {
            table[v * k + i] = r.f64()?;
        }
    }
    r.finish()?;
    Ok((AltIndex::from_parts(landmarks, n, table), fp))
}

pub fn write_alp_index<W: Write>(
    index: &AlpIndex,
    graph_fingerprint: u64,
    mut out: W,
) -> Result<()> {
    out.write_all(ALP_MAGIC)?;
    out.write_all(&FORMAT_VERSION.to_le_bytes())?;
    out.write_all(&graph_fingerprint.to_le_bytes())?;
    out.write_all(&[match index.mode() {
        EmbeddingMode::Exact => 0u8,
        EmbeddingMode::Induced => 1u8,
    }])?;
    out.write_all(&(index.vertex_count() as u64).to_le_bytes())?;
    out.write_all(&(index.landmark_count() as u64).to_le_bytes())?;
    for &l in index.landmarks() {
        out.write_all(&l.to_le_bytes())?;
    }
    for label in index.labels() {
        out.write_all(&label.landmark.to_le_bytes())?;
        out.write_all(&label.dist.to_le_bytes())?;
    }
    for &d in index.matrix() {
        out.write_all(&d.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_alp_index<R: Read>(input: R) -> Result<(AlpIndex, u64)> {
    let mut r = Reader {
        inner: input,
        kind: "ALP index",
    };
    r.header(ALP_MAGIC)?;
    let fp = r.u64()?;
    let mode = match r.u8()? {
        0 => EmbeddingMode::Exact,
        1 => EmbeddingMode::Induced,
        m => return Err(Error::format("ALP index", format!("unknown mode byte {m}"))),
    };
    let n = r.len(u32::MAX as u64)?;
    let k = r.len(1 << 20)?;
    let landmarks: Vec<u32> = (0..k).map(|_| r.u32()).collect::<Result<_>>()?;
    if landmarks.iter().any(|&l| l as usize >= n) {
        return Err(Error::format("ALP index", "landmark id out of range"));
    }
    let labels = (0..n)
        .map(|_| {
            let landmark = r.u32()?;
            if landmark as usize >= k {
                return Err(Error::format(
                    "ALP index",
                    "label references unknown landmark",
                ));
            }
            Ok(Label {
                landmark,
                dist: r.f64()?,
            })
        })
        .collect::<Result<_>>()?;
    let matrix = (0..k * k).map(|_| r.f64()).collect::<Result<_>>()?;
    r.finish()?;
    Ok((AlpIndex::from_parts(mode, landmarks, labels, matrix), fp))
}

pub(crate) fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

pub(crate) fn open(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(File::open(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{build_alp_index, build_alt_index};
    use crate::generate::{generate_weighted, GenParams, Weights};
    use crate::partition::bfs_regions;

    fn sample() -> Graph {
        generate_weighted(
            &GenParams::Grid { rows: 4, cols: 5 },
            Weights::UniformInt { lo: 1, hi: 7 },
            3,
        )
        .unwrap()
    }

    #[test]
    fn graph_round_trip() {
        let g = sample();
        let bytes = graph_bytes(&g);
        assert_eq!(&bytes[..4], b"ALPG");
        assert_eq!(u32::from_le_bytes(bytes[4..8].try_into().unwrap()), 1);
        assert_eq!(u64::from_le_bytes(bytes[8..16].try_into().unwrap()), 20);
        assert_eq!(read_graph(bytes.as_slice()).unwrap(), g);
    }

    #[test]
    fn graph_decode_errors() {
        let mut bytes = graph_bytes(&sample());
        assert!(matches!(
            read_graph(&bytes[..30]),
            Err(Error::Format { .. })
        ));
        bytes.push(0);
        assert!(matches!(
            read_graph(bytes.as_slice()),
            Err(Error::Format { .. })
        ));
        bytes[0] = b'X';
        assert!(matches!(
            read_graph(bytes.as_slice()),
            Err(Error::Format { .. })
        ));
    }

    #[test]
    fn fingerprint_tracks_content() {
        let g = sample();
        assert_eq!(fingerprint(&g), fingerprint(&g.clone()));
        assert_ne!(fingerprint(&g), fingerprint(&g.unit_weighted()));
    }

    #[test]
    fn index_round_trips() {
        let g = sample();
        let p = bfs_regions(&g, 3, 1).unwrap();
        let landmarks: Vec<u32> = p.communities().iter().map(|c| c.ids()[0]).collect();
        let alt = build_alt_index(&g, &landmarks).unwrap();
        let alp = build_alp_index(&g, &p, &landmarks, EmbeddingMode::Induced).unwrap();

        let mut buf = Vec::new();
        write_alt_index(&alt, 42, &mut buf).unwrap();
        assert_eq!(buf.len(), 4 + 4 + 8 + 8 + 8 + alt.payload_bytes());
        assert_eq!(read_alt_index(buf.as_slice()).unwrap(), (alt, 42));

        let mut buf = Vec::new();
        write_alp_index(&alp, 7, &mut buf).unwrap();
        assert_eq!(buf.len(), 4 + 4 + 8 + 1 + 8 + 8 + alp.payload_bytes());
        assert_eq!(read_alp_index(buf.as_slice()).unwrap(), (alp, 7));
        assert!(read_alt_index(buf.as_slice()).is_err());
    }
}
