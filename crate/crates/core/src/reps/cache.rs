use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::MatFp;

use super::{Acting, Rep};

const MAGIC: &[u8; 8] = b"MODREPv\0";

/// Bumped whenever the layout or the basis conventions change; older files
/// are then treated as missing.
pub const CACHE_FORMAT_VERSION: u32 = 1;

/// Writes the generator images of an `S_n`-module. Entries take one byte when
/// `p < 256` and four bytes otherwise. The file is replaced atomically.
pub fn write_rep(path: &Path, rep: &Rep) -> Result<()> {
    let Acting::Symmetric(n) = *rep.acting() else {
        return Err(Error::Unsupported("caching modules of subgroups".into()));
    };
    let p = rep.modulus();
    let mut buf = Vec::with_capacity(32 + rep.gens().len() * rep.dim() * rep.dim());
    buf.extend_from_slice(MAGIC);
    for x in [CACHE_FORMAT_VERSION, n as u32, p, rep.dim() as u32, rep.gens().len() as u32] {
        buf.extend_from_slice(&x.to_le_bytes());
    }
    let name = rep.name().as_bytes();
    buf.extend_from_slice(&(name.len() as u32).to_le_bytes());
    buf.extend_from_slice(name);
    for g in rep.gens() {
        for &x in g.data() {
            if p < 256 {
                buf.push(x as u8);
            } else {
                buf.extend_from_slice(&x.to_le_bytes());
            }
        }
    }
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&buf)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn take(&mut self, len: usize) -> Result<&[u8]> {
        let end = self.pos.checked_add(len).filter(|&e| e <= self.data.len());
        let end = end.ok_or_else(|| Error::Cache("truncated file".into()))?;
        let s = &self.data[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("four bytes")))
    }
}

/// Reads a module written by [`write_rep`]. A missing file, a different
/// format version or a header for another `(n, p)` gives `Ok(None)`; a
/// damaged file of the current version is an error.
pub fn read_rep(path: &Path, n: usize, p: u32) -> Result<Option<Rep>> {
    let data = match fs::read(path) {
        Ok(d) => d,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut c = Cursor { data: &data, pos: 0 };
    if c.take(8).ok() != Some(MAGIC.as_slice()) {
        return Err(Error::Cache(format!("{} is not a module cache file", path.display())));
    }
    if c.u32()? != CACHE_FORMAT_VERSION {
        return Ok(None);
    }
    let (fn_, fp, dim, ngens) = (c.u32()? as usize, c.u32()?, c.u32()? as usize, c.u32()? as usize);
    if fn_ != n || fp != p {
        return Ok(None);
    }
    if ngens != n.saturating_sub(1) {
        return Err(Error::Cache(format!("{ngens} generators stored for S_{n}")));
    }
    let name_len = c.u32()? as usize;
    let name = String::from_utf8(c.take(name_len)?.to_vec()).map_err(|_| Error::Cache("name is not UTF-8".into()))?;
    let width = if p < 256 { 1 } else { 4 };
    let mut gens = Vec::with_capacity(ngens);
    for _ in 0..ngens {
        let raw = c.take(dim * dim * width)?;
        let entries: Vec<u32> = if width == 1 {
            raw.iter().map(|&b| b as u32).collect()
        } else {
            raw.chunks_exact(4).map(|w| u32::from_le_bytes(w.try_into().expect("four bytes"))).collect()
        };
        if entries.iter().any(|&x| x >= p) {
            return Err(Error::Cache("entry outside the field".into()));
        }
        gens.push(MatFp::new(dim, dim, p, entries)?);
    }
    if c.pos != data.len() {
        return Err(Error::Cache("trailing bytes".into()));
    }
    Ok(Some(Rep::new(p, dim, Acting::Symmetric(n), gens, name)?))
}
