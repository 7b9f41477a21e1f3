//! Well-formedness, element allowlist and coordinate bounds for the SVG
//! subset the renderers emit.

#![allow(dead_code)]

const ALLOWED: [&str; 7] = ["svg", "g", "rect", "line", "polyline", "text", "title"];

#[derive(Debug)]
pub struct Element {
    pub name: String,
    pub attrs: Vec<(String, String)>,
}

impl Element {
    pub fn attr(&self, key: &str) -> Option<&str> {
        self.attrs.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn num(&self, key: &str) -> f64 {
        self.attr(key)
            .unwrap_or_else(|| panic!("<{}> lacks {key}", self.name))
            .parse()
            .unwrap()
    }
}

fn parse_attrs(s: &str) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let eq = rest.find('=').ok_or_else(|| format!("attribute without value: {rest}"))?;
        let key = rest[..eq].trim().to_string();
        if key.is_empty() || !key.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'-' || b == b':') {
            return Err(format!("bad attribute name '{key}'"));
        }
        let after = &rest[eq + 1..];
        if !after.starts_with('"') {
            return Err(format!("unquoted value for {key}"));
        }
        let close = after[1..].find('"').ok_or("unterminated attribute")?;
        let value = &after[1..1 + close];
        if value.contains('<') {
            return Err("'<' inside attribute".into());
        }
        if out.iter().any(|(k, _): &(String, String)| *k == key) {
            return Err(format!("duplicate attribute {key}"));
        }
        out.push((key, value.to_string()));
        rest = after[close + 2..].trim_start();
    }
    Ok(out)
}

fn check_text(t: &str) -> Result<(), String> {
    let mut rest = t;
    while let Some(i) = rest.find('&') {
        let tail = &rest[i..];
        if !["&amp;", "&lt;", "&gt;", "&quot;", "&apos;"]
            .iter()
            .any(|e| tail.starts_with(e))
        {
            return Err(format!("bare '&' in text: {tail}"));
        }
        rest = &tail[1..];
    }
    if t.contains('>') {
        return Err("bare '>' in text".into());
    }
    Ok(())
}

/// Parses `doc`, checking nesting, the element allowlist and that the root
/// is a single `svg` element. Returns every element in document order.
pub fn parse(doc: &str) -> Result<Vec<Element>, String> {
    let mut stack: Vec<String> = Vec::new();
    let mut elems = Vec::new();
    let mut rest = doc;
    let mut roots = 0;
    loop {
        let Some(lt) = rest.find('<') else {
            check_text(rest)?;
            if !rest.trim().is_empty() {
                return Err("text after root".into());
            }
            break;
        };
        let text = &rest[..lt];
        check_text(text)?;
        if stack.is_empty() && !text.trim().is_empty() {
            return Err("text outside root".into());
        }
        let gt = rest[lt..].find('>').ok_or("unterminated tag")? + lt;
        let tag = &rest[lt + 1..gt];
        rest = &rest[gt + 1..];
        if let Some(name) = tag.strip_prefix('/') {
            let open = stack.pop().ok_or("close without open")?;
            if open != name.trim() {
                return Err(format!("</{name}> closes <{open}>"));
            }
            continue;
        }
        let self_closing = tag.ends_with('/');
        let body = tag.trim_end_matches('/');
        let (name, attrs) = match body.find(char::is_whitespace) {
            Some(i) => (&body[..i], &body[i..]),
            None => (body, ""),
        };
        if !ALLOWED.contains(&name) {
            return Err(format!("element <{name}> not allowed"));
        }
        if stack.is_empty() {
            roots += 1;
            if name != "svg" || roots > 1 {
                return Err("root must be a single <svg>".into());
            }
        }
        elems.push(Element {
            name: name.to_string(),
            attrs: parse_attrs(attrs)?,
        });
        if !self_closing {
            stack.push(name.to_string());
        }
    }
    if !stack.is_empty() {
        return Err(format!("unclosed {stack:?}"));
    }
    if roots != 1 {
        return Err("no root".into());
    }
    Ok(elems)
}

/// Every coordinate lies within `[0, width] × [0, height]`.
pub fn check_bounds(elems: &[Element]) -> Result<(), String> {
    let root = &elems[0];
    let (w, h) = (root.num("width"), root.num("height"));
    let inside = |x: f64, y: f64| (0.0..=w).contains(&x) && (0.0..=h).contains(&y);
    for e in elems {
        let ok = match e.name.as_str() {
            "rect" => {
                let (x, y) = (e.num("x"), e.num("y"));
                let (rw, rh) = (e.num("width"), e.num("height"));
                rw >= 0.0 && rh >= 0.0 && inside(x, y) && inside(x + rw, y + rh)
            }
            "line" => inside(e.num("x1"), e.num("y1")) && inside(e.num("x2"), e.num("y2")),
            "text" => inside(e.num("x"), e.num("y")),
            "polyline" => e.attr("points").unwrap().split(' ').all(|p| {
                let (x, y) = p.split_once(',').unwrap();
                inside(x.parse().unwrap(), y.parse().unwrap())
            }),
            _ => true,
        };
        if !ok {
            return Err(format!("<{}> out of bounds: {:?}", e.name, e.attrs));
        }
    }
    Ok(())
}

pub fn validate(doc: &str) -> Result<Vec<Element>, String> {
    let elems = parse(doc)?;
    check_bounds(&elems)?;
    Ok(elems)
}
