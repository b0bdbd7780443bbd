//! Feature table persistence: a diffable CSV format and a compact binary
//! alternative, both keyed by (video_id, group).

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::features::FeatureGroup;

/// One vector per (video, group).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FeatureTable {
    pub rows: BTreeMap<(String, FeatureGroup), Vec<f64>>,
}

/// Sampled frame rows per (video, group); frame index is implicit in row
/// order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FrameTable {
    pub rows: BTreeMap<(String, FeatureGroup), Vec<Vec<f64>>>,
}

const BINARY_MAGIC: &[u8; 6] = b"MVFT1\0";

impl FeatureTable {
    pub fn insert(&mut self, video_id: &str, group: FeatureGroup, row: Vec<f64>) {
        self.rows.insert((video_id.to_string(), group), row);
    }

    pub fn get(&self, video_id: &str, group: FeatureGroup) -> Option<&[f64]> {
        self.rows
            .get(&(video_id.to_string(), group))
            .map(Vec::as_slice)
    }

    pub fn video_ids(&self) -> Vec<String> {
        let mut ids: Vec<String> = self.rows.keys().map(|(id, _)| id.clone()).collect();
        ids.dedup();
        ids
    }

    pub fn groups(&self) -> Vec<FeatureGroup> {
        let mut groups: Vec<FeatureGroup> = self.rows.keys().map(|(_, g)| *g).collect();
        groups.sort();
        groups.dedup();
        groups
    }

    /// `video_id,group,v0,v1,...` with rows sorted by key.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut out = String::new();
        for ((id, group), row) in &self.rows {
            out.push_str(id);
            out.push(',');
            out.push_str(group.name());
            for v in row {
                out.push(',');
                out.push_str(&format!("{v}"));
            }
            out.push('\n');
        }
        std::fs::write(path, out).map_err(|e| Error::io(path, e))
    }

    pub fn read_csv(path: &Path) -> Result<FeatureTable> {
        let content = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut table = FeatureTable::default();
        for (idx, line) in content.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split(',');
            let id = parts
                .next()
                .ok_or_else(|| Error::parse(path, idx + 1, "missing video_id"))?;
            let group = FeatureGroup::parse(
                parts
                    .next()
                    .ok_or_else(|| Error::parse(path, idx + 1, "missing group"))?,
            )?;
            let row: Vec<f64> = parts
                .map(|p| {
                    p.parse::<f64>()
                        .map_err(|e| Error::parse(path, idx + 1, format!("bad float {p}: {e}")))
                })
                .collect::<Result<_>>()?;
            table.insert(id, group, row);
        }
        Ok(table)
    }

    /// Length-prefixed little-endian binary alternative to the CSV format.
    pub fn write_binary(&self, path: &Path) -> Result<()> {
        let mut out: Vec<u8> = Vec::new();
        out.extend_from_slice(BINARY_MAGIC);
        out.extend_from_slice(&(self.rows.len() as u64).to_le_bytes());
        for ((id, group), row) in &self.rows {
            let id_bytes = id.as_bytes();
            out.extend_from_slice(&(id_bytes.len() as u16).to_le_bytes());
            out.extend_from_slice(id_bytes);
            let group_idx =
                FeatureGroup::ALL.iter().position(|g| g == group).unwrap() as u8;
            out.push(group_idx);
            out.extend_from_slice(&(row.len() as u32).to_le_bytes());
            for v in row {
                out.extend_from_slice(&v.to_le_bytes());
            }
        }
        std::fs::write(path, out).map_err(|e| Error::io(path, e))
    }

    pub fn read_binary(path: &Path) -> Result<FeatureTable> {
        let mut file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        let mut bytes = Vec::new();
        file.read_to_end(&mut bytes).map_err(|e| Error::io(path, e))?;
        let mut cursor = 0usize;
        fn take<'a>(
            bytes: &'a [u8],
            cursor: &mut usize,
            n: usize,
            path: &Path,
        ) -> Result<&'a [u8]> {
            if *cursor + n > bytes.len() {
                return Err(Error::parse(path, 0, "truncated binary table"));
            }
            let slice = &bytes[*cursor..*cursor + n];
            *cursor += n;
            Ok(slice)
        }
        if take(&bytes, &mut cursor, 6, path)? != BINARY_MAGIC {
            return Err(Error::parse(path, 0, "bad binary table magic"));
        }
        let count = u64::from_le_bytes(take(&bytes, &mut cursor, 8, path)?.try_into().unwrap());
        let mut table = FeatureTable::default();
        for _ in 0..count {
            let id_len = u16::from_le_bytes(take(&bytes, &mut cursor, 2, path)?.try_into().unwrap()) as usize;
            let id = String::from_utf8(take(&bytes, &mut cursor, id_len, path)?.to_vec())
                .map_err(|_| Error::parse(path, 0, "invalid utf-8 video id"))?;
            let group_idx = take(&bytes, &mut cursor, 1, path)?[0] as usize;
            let group = *FeatureGroup::ALL
                .get(group_idx)
                .ok_or_else(|| Error::parse(path, 0, "bad group index"))?;
            let dim = u32::from_le_bytes(take(&bytes, &mut cursor, 4, path)?.try_into().unwrap()) as usize;
            let mut row = Vec::with_capacity(dim);
            for _ in 0..dim {
                row.push(f64::from_le_bytes(take(&bytes, &mut cursor, 8, path)?.try_into().unwrap()));
            }
            table.insert(&id, group, row);
        }
        Ok(table)
    }

    /// Reads CSV or binary depending on the file's magic bytes.
    pub fn read_auto(path: &Path) -> Result<FeatureTable> {
        let mut head = [0u8; 6];
        let mut file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        let n = file.read(&mut head).map_err(|e| Error::io(path, e))?;
        drop(file);
        if n == 6 && &head == BINARY_MAGIC {
            FeatureTable::read_binary(path)
        } else {
            FeatureTable::read_csv(path)
        }
    }
}

impl FrameTable {
    pub fn insert(&mut self, video_id: &str, group: FeatureGroup, rows: Vec<Vec<f64>>) {
        self.rows.insert((video_id.to_string(), group), rows);
    }

    pub fn get(&self, video_id: &str, group: FeatureGroup) -> Option<&Vec<Vec<f64>>> {
        self.rows.get(&(video_id.to_string(), group))
    }

    /// `video_id,group,frame_idx,v0,...`.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut out = String::new();
        for ((id, group), rows) in &self.rows {
            for (frame_idx, row) in rows.iter().enumerate() {
                out.push_str(id);
                out.push(',');
                out.push_str(group.name());
                out.push_str(&format!(",{frame_idx}"));
                for v in row {
                    out.push(',');
                    out.push_str(&format!("{v}"));
                }
                out.push('\n');
            }
        }
        std::fs::write(path, out).map_err(|e| Error::io(path, e))
    }

    pub fn read_csv(path: &Path) -> Result<FrameTable> {
        type IndexedRows = Vec<(usize, Vec<f64>)>;
        let content = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut rows: BTreeMap<(String, FeatureGroup), IndexedRows> = BTreeMap::new();
        for (idx, line) in content.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split(',');
            let id = parts
                .next()
                .ok_or_else(|| Error::parse(path, idx + 1, "missing video_id"))?
                .to_string();
            let group = FeatureGroup::parse(
                parts
                    .next()
                    .ok_or_else(|| Error::parse(path, idx + 1, "missing group"))?,
            )?;
            let frame_idx: usize = parts
                .next()
                .ok_or_else(|| Error::parse(path, idx + 1, "missing frame index"))?
                .parse()
                .map_err(|e| Error::parse(path, idx + 1, format!("bad frame index: {e}")))?;
            let row: Vec<f64> = parts
                .map(|p| {
                    p.parse::<f64>()
                        .map_err(|e| Error::parse(path, idx + 1, format!("bad float {p}: {e}")))
                })
                .collect::<Result<_>>()?;
            rows.entry((id, group)).or_default().push((frame_idx, row));
        }
        let mut table = FrameTable::default();
        for ((id, group), mut frames) in rows {
            frames.sort_by_key(|(i, _)| *i);
            table.insert(&id, group, frames.into_iter().map(|(_, r)| r).collect());
        }
        Ok(table)
    }
}

/// Writes any text artifact, creating parent directories first.
pub fn write_text(path: &Path, content: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    let mut f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(content.as_bytes()).map_err(|e| Error::io(path, e))
}
