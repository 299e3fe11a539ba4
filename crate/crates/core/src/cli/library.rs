//! Built-in presentations and maps, kept as DSL text and parsed on use.

use std::path::Path;

use crate::bialgebra::{GenMap, Presentation};
use crate::cli::dsl::{parse_library, Library, MapSpec};
use crate::error::{Error, Result};

pub const BUILTIN_SOURCES: &[(&str, &str)] = &[
    ("glgh", include_str!("../../presentations/glgh.hopf")),
    ("illy", include_str!("../../presentations/illy.hopf")),
    ("glgh01", include_str!("../../presentations/glgh01.hopf")),
    ("glghb", include_str!("../../presentations/glghb.hopf")),
    ("exchange", include_str!("../../presentations/exchange.hopf")),
];

pub fn builtin_library() -> Result<Library> {
    let mut lib = Library::default();
    for (_, src) in BUILTIN_SOURCES {
        let part = parse_library(src)?;
        lib.presentations.extend(part.presentations);
        lib.maps.extend(part.maps);
    }
    Ok(lib)
}

pub fn builtin(name: &str) -> Result<Presentation> {
    builtin_library()?
        .presentation(name)
        .cloned()
        .ok_or_else(|| Error::UnknownPresentation(name.into()))
}

fn read(path: &Path) -> Result<Library> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
    parse_library(&text)
}

/// A built-in name, or a `.hopf` file holding the presentation (the first one
/// when there are several; `file.hopf:name` picks one by name).
pub fn resolve_presentation(arg: &str) -> Result<Presentation> {
    if let Some(p) = builtin_library()?.presentation(arg) {
        return Ok(p.clone());
    }
    let (path, name) = split_arg(arg);
    if !path.exists() {
        return Err(Error::UnknownPresentation(arg.into()));
    }
    let lib = read(path)?;
    match name {
        Some(n) => lib.presentation(n).cloned(),
        None => lib.presentations.first().cloned(),
    }
    .ok_or_else(|| Error::UnknownPresentation(arg.into()))
}

/// A built-in map name, `identity`, or a `.hopf` file holding the map.
pub fn resolve_map(arg: &str, source: &Presentation, target: &Presentation) -> Result<GenMap> {
    if arg == "identity" {
        let pairs = source
            .generators()
            .iter()
            .map(|g| Ok((g.clone(), target.generator(g)?)))
            .collect::<Result<Vec<_>>>()?;
        return GenMap::new("identity", source, target, pairs, Vec::new());
    }
    map_spec(arg)?.bind(source, target)
}

fn map_spec(arg: &str) -> Result<MapSpec> {
    if let Some(m) = builtin_library()?.map(arg) {
        return Ok(m.clone());
    }
    let (path, name) = split_arg(arg);
    if !path.exists() {
        return Err(Error::UnknownMap(arg.into()));
    }
    let lib = read(path)?;
    match name {
        Some(n) => lib.map(n).cloned(),
        None => lib.maps.first().cloned(),
    }
    .ok_or_else(|| Error::UnknownMap(arg.into()))
}

fn split_arg(arg: &str) -> (&Path, Option<&str>) {
    match arg.rsplit_once(':') {
        Some((file, name)) if !Path::new(arg).exists() => (Path::new(file), Some(name)),
        _ => (Path::new(arg), None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebra::specialize;
    use crate::cli::dsl::{parse_presentation, print_presentation};
    use crate::scalars::integer;

    #[test]
    fn builtins_parse_and_round_trip() {
        let lib = builtin_library().unwrap();
        assert_eq!(lib.presentations.len(), 4);
        for p in &lib.presentations {
            assert_eq!(p.relations().len(), 6, "{}", p.name());
            assert_eq!(&parse_presentation(&print_presentation(p)).unwrap(), p);
        }
    }

    #[test]
    fn glgh01_is_the_specialization() {
        let glgh = builtin("glgh").unwrap();
        let s = specialize(&glgh, &[("g".into(), integer(0)), ("h".into(), integer(1))]).unwrap();
        assert!(s.same_relations(&builtin("glgh01").unwrap()).unwrap());
    }

    #[test]
    fn exchange_binds() {
        let p = builtin("glgh01").unwrap();
        let q = builtin("illy").unwrap();
        let m = resolve_map("exchange", &p, &q).unwrap();
        assert_eq!(m.image("a").unwrap().to_string(), "d");
        assert_eq!(m.image("c").unwrap().to_string(), "b");
    }

    #[test]
    fn unknown_names() {
        assert_eq!(
            resolve_presentation("nope").unwrap_err(),
            Error::UnknownPresentation("nope".into())
        );
        let p = builtin("illy").unwrap();
        assert_eq!(
            resolve_map("nope", &p, &p).unwrap_err(),
            Error::UnknownMap("nope".into())
        );
    }
}
