//! Recursive-descent checker for the Graphviz DOT language:
//!
//! ```text
//! graph     : [strict] (graph | digraph) [ID] '{' stmt_list '}'
//! stmt_list : [stmt [';'] stmt_list]
//! stmt      : node_stmt | edge_stmt | attr_stmt | ID '=' ID | subgraph
//! attr_stmt : (graph | node | edge) attr_list
//! attr_list : '[' [a_list] ']' [attr_list]
//! a_list    : ID '=' ID [';' | ','] [a_list]
//! edge_stmt : (node_id | subgraph) edgeRHS [attr_list]
//! edgeRHS   : edgeop (node_id | subgraph) [edgeRHS]
//! node_stmt : node_id [attr_list]
//! node_id   : ID [port]
//! port      : ':' ID [':' ID]
//! subgraph  : [subgraph [ID]] '{' stmt_list '}'
//! ```
//!
//! IDs are identifiers, numerals, double-quoted strings or HTML strings.
//! Comments are `//`, `/* */` and lines starting with `#`.

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Id(String),
    Sym(char),
    Edge(&'static str),
}

#[derive(Debug, Default)]
pub struct Graph {
    pub directed: bool,
    pub nodes: Vec<(String, Vec<(String, String)>)>,
    pub edges: Vec<(String, String)>,
}

impl Graph {
    pub fn label_of(&self, node: &str) -> Option<&str> {
        self.nodes
            .iter()
            .find(|(n, _)| n == node)
            .and_then(|(_, attrs)| attrs.iter().find(|(k, _)| k == "label"))
            .map(|(_, v)| v.as_str())
    }
}

fn lex(src: &str) -> Result<Vec<Tok>, String> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut line_start = true;
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line_start = true;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' && line_start {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        line_start = false;
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
        } else if c == '/' && chars.get(i + 1) == Some(&'*') {
            i += 2;
            while i + 1 < chars.len() && !(chars[i] == '*' && chars[i + 1] == '/') {
                i += 1;
            }
            if i + 1 >= chars.len() {
                return Err("unterminated comment".into());
            }
            i += 2;
        } else if c == '-' && matches!(chars.get(i + 1), Some('>') | Some('-')) {
            out.push(Tok::Edge(if chars[i + 1] == '>' { "->" } else { "--" }));
            i += 2;
        } else if "{}[]=;,:".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else if c == '"' {
            let mut s = String::new();
            i += 1;
            loop {
                match chars.get(i) {
                    None => return Err("unterminated string".into()),
                    Some('"') => break,
                    Some('\\') if chars.get(i + 1) == Some(&'"') => {
                        s.push('"');
                        i += 2;
                    }
                    Some('\\') if chars.get(i + 1) == Some(&'\n') => i += 2,
                    Some(&ch) => {
                        s.push(ch);
                        i += 1;
                    }
                }
            }
            i += 1;
            out.push(Tok::Id(s));
        } else if c == '<' {
            let mut depth = 0;
            let start = i;
            loop {
                match chars.get(i) {
                    None => return Err("unterminated HTML string".into()),
                    Some('<') => depth += 1,
                    Some('>') => {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    }
                    _ => {}
                }
                i += 1;
            }
            i += 1;
            out.push(Tok::Id(chars[start + 1..i - 1].iter().collect()));
        } else if c.is_ascii_digit() || c == '.' || c == '-' {
            let start = i;
            if c == '-' {
                i += 1;
            }
            let mut dot = false;
            let mut digits = 0;
            while let Some(&ch) = chars.get(i) {
                if ch.is_ascii_digit() {
                    digits += 1;
                } else if ch == '.' && !dot {
                    dot = true;
                } else {
                    break;
                }
                i += 1;
            }
            if digits == 0 {
                return Err(format!("malformed numeral at offset {start}"));
            }
            out.push(Tok::Id(chars[start..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' || !c.is_ascii() {
            let start = i;
            while let Some(&ch) = chars.get(i) {
                if ch.is_alphanumeric() || ch == '_' || !ch.is_ascii() {
                    i += 1;
                } else {
                    break;
                }
            }
            out.push(Tok::Id(chars[start..i].iter().collect()));
        } else {
            return Err(format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    edge_op: &'static str,
    graph: Graph,
}

fn keyword(t: &Tok, kw: &str) -> bool {
    matches!(t, Tok::Id(s) if s.eq_ignore_ascii_case(kw))
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), String> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(format!(
                "expected `{c}` at token {}, found {:?}",
                self.pos,
                self.peek()
            ))
        }
    }

    fn id(&mut self) -> Result<String, String> {
        match self.peek().cloned() {
            Some(Tok::Id(s)) => {
                self.pos += 1;
                Ok(s)
            }
            other => Err(format!(
                "expected an ID at token {}, found {other:?}",
                self.pos
            )),
        }
    }

    fn graph(mut self) -> Result<Graph, String> {
        if self.peek().is_some_and(|t| keyword(t, "strict")) {
            self.pos += 1;
        }
        match self.peek() {
            Some(t) if keyword(t, "digraph") => {
                self.graph.directed = true;
                self.edge_op = "->";
            }
            Some(t) if keyword(t, "graph") => self.edge_op = "--",
            other => return Err(format!("expected `graph` or `digraph`, found {other:?}")),
        }
        self.pos += 1;
        if matches!(self.peek(), Some(Tok::Id(_))) {
            self.pos += 1;
        }
        self.expect('{')?;
        self.stmt_list()?;
        self.expect('}')?;
        if self.pos != self.toks.len() {
            return Err(format!("trailing tokens after the graph at {}", self.pos));
        }
        Ok(self.graph)
    }

    fn stmt_list(&mut self) -> Result<(), String> {
        while !matches!(self.peek(), Some(Tok::Sym('}')) | None) {
            self.stmt()?;
            self.eat(';');
        }
        Ok(())
    }

    fn attr_list(&mut self) -> Result<Vec<(String, String)>, String> {
        let mut attrs = Vec::new();
        while self.eat('[') {
            while !self.eat(']') {
                let k = self.id()?;
                self.expect('=')?;
                let v = self.id()?;
                attrs.push((k, v));
                if !self.eat(';') {
                    self.eat(',');
                }
            }
        }
        Ok(attrs)
    }

    /// Returns the node IDs of a node_id or subgraph operand.
    fn operand(&mut self) -> Result<Vec<String>, String> {
        let is_subgraph = matches!(self.peek(), Some(Tok::Sym('{')))
            || self.peek().is_some_and(|t| keyword(t, "subgraph"));
        if is_subgraph {
            let before = self.graph.nodes.len();
            if !self.eat('{') {
                self.pos += 1;
                if matches!(self.peek(), Some(Tok::Id(_))) {
                    self.pos += 1;
                }
                self.expect('{')?;
            }
            self.stmt_list()?;
            self.expect('}')?;
            return Ok(self.graph.nodes[before..]
                .iter()
                .map(|(n, _)| n.clone())
                .collect());
        }
        let id = self.id()?;
        if self.eat(':') {
            self.id()?;
            if self.eat(':') {
                self.id()?;
            }
        }
        Ok(vec![id])
    }

    fn add_node(&mut self, id: &str, attrs: Vec<(String, String)>) {
        match self.graph.nodes.iter_mut().find(|(n, _)| n == id) {
            Some((_, a)) => a.extend(attrs),
            None => self.graph.nodes.push((id.to_string(), attrs)),
        }
    }

    fn stmt(&mut self) -> Result<(), String> {
        let head = self.peek().cloned().ok_or("unexpected end of input")?;
        if ["graph", "node", "edge"].iter().any(|k| keyword(&head, k))
            && self.toks.get(self.pos + 1) == Some(&Tok::Sym('['))
        {
            self.pos += 1;
            self.attr_list()?;
            return Ok(());
        }
        if matches!(head, Tok::Id(_)) && self.toks.get(self.pos + 1) == Some(&Tok::Sym('=')) {
            self.pos += 2;
            self.id()?;
            return Ok(());
        }
        let mut chain = vec![self.operand()?];
        while let Some(Tok::Edge(op)) = self.peek().cloned() {
            if op != self.edge_op {
                return Err(format!(
                    "edge operator `{op}` in a graph expecting `{}`",
                    self.edge_op
                ));
            }
            self.pos += 1;
            chain.push(self.operand()?);
        }
        let attrs = self.attr_list()?;
        if chain.len() == 1 {
            if let [id] = chain[0].as_slice() {
                let id = id.clone();
                self.add_node(&id, attrs);
            }
        } else {
            for w in chain.windows(2) {
                for a in &w[0] {
                    for b in &w[1] {
                        self.add_node(a, Vec::new());
                        self.add_node(b, Vec::new());
                        self.graph.edges.push((a.clone(), b.clone()));
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn parse(src: &str) -> Result<Graph, String> {
    let toks = lex(src)?;
    Parser {
        toks,
        pos: 0,
        edge_op: "->",
        graph: Graph::default(),
    }
    .graph()
}

#[test]
fn rejects_malformed_graphs() {
    assert!(parse("digraph { a -> }").is_err());
    assert!(parse("digraph { a -- b }").is_err());
    assert!(parse("digraph { \"a }").is_err());
    assert!(parse("graph { a -- b } extra").is_err());
    assert!(parse("digraph { a [label=] }").is_err());
}

#[test]
fn accepts_common_forms() {
    let g = parse("strict digraph G {\n# pre\n node [shape=box]; rankdir=BT\n a -> {b c} -> d [color=red]\n /* x */ \"q\\\"\" [label=<<b>x</b>>] }").unwrap();
    assert_eq!(g.edges.len(), 4);
    assert_eq!(g.label_of("q\""), Some("<b>x</b>"));
}
