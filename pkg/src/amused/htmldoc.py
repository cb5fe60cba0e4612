"""Tiny DOM over the stdlib HTML parser, enough for field and anchor extraction.

Supports the selector subset parser profiles use: tag names, ``.class``,
``#id``, ``[attr=value]`` filters, and descendant chains ("div.body a").
"""

from __future__ import annotations

import re
from html.parser import HTMLParser

VOID_TAGS = {"area", "base", "br", "col", "embed", "hr", "img", "input",
             "link", "meta", "param", "source", "track", "wbr"}

_SIMPLE_RE = re.compile(
    r"^(?P<tag>[a-zA-Z][a-zA-Z0-9-]*)?"
    r"(?P<filters>(?:[.#][\w-]+|\[[\w-]+=[^\]]*\])*)$")
_FILTER_RE = re.compile(r"[.#][\w-]+|\[[\w-]+=[^\]]*\]")


class Node:
    __slots__ = ("tag", "attrs", "children", "parent")

    def __init__(self, tag: str, attrs: dict | None = None, parent: "Node | None" = None):
        self.tag = tag
        self.attrs = attrs or {}
        self.children: list = []  # Node or str (text)
        self.parent = parent

    def iter_nodes(self):
        """All element descendants in document order, self excluded."""
        for child in self.children:
            if isinstance(child, Node):
                yield child
                yield from child.iter_nodes()

    def text(self) -> str:
        """Concatenated descendant text with whitespace collapsed."""
        parts: list[str] = []
        self._collect_text(parts)
        return re.sub(r"\s+", " ", "".join(parts)).strip()

    def _collect_text(self, parts: list):
        for child in self.children:
            if isinstance(child, Node):
                if child.tag in ("script", "style"):
                    continue
                child._collect_text(parts)
                # block-ish elements break words apart
                if child.tag in ("p", "div", "br", "li", "tr", "h1", "h2", "h3",
                                 "h4", "h5", "h6", "blockquote", "section", "article"):
                    parts.append(" ")
            else:
                parts.append(child)

    def classes(self) -> list[str]:
        return self.attrs.get("class", "").split()

    # -- selectors -------------------------------------------------------

    def select(self, selector: str) -> list["Node"]:
        parts = [_parse_simple(p) for p in selector.split()]
        out = []
        for node in self.iter_nodes():
            if _matches(node, parts[-1]) and _ancestors_match(node, parts[:-1], self):
                out.append(node)
        return out

    def select_one(self, selector: str) -> "Node | None":
        found = self.select(selector)
        return found[0] if found else None


def _parse_simple(part: str):
    m = _SIMPLE_RE.match(part)
    if not m:
        raise ValueError(f"unsupported selector: {part!r}")
    tag = (m.group("tag") or "").lower()
    classes, node_id, attr_eq = [], None, []
    for f in _FILTER_RE.findall(m.group("filters") or ""):
        if f.startswith("."):
            classes.append(f[1:])
        elif f.startswith("#"):
            node_id = f[1:]
        else:
            name, _, value = f[1:-1].partition("=")
            attr_eq.append((name, value))
    return (tag, classes, node_id, attr_eq)


def _matches(node: Node, simple) -> bool:
    tag, classes, node_id, attr_eq = simple
    if tag and node.tag != tag:
        return False
    if node_id is not None and node.attrs.get("id") != node_id:
        return False
    node_classes = node.classes()
    if any(c not in node_classes for c in classes):
        return False
    return all(node.attrs.get(n) == v for n, v in attr_eq)


def _ancestors_match(node: Node, chain, root: Node) -> bool:
    cur = node.parent
    for simple in reversed(chain):
        while cur is not None and cur is not root:
            if _matches(cur, simple):
                break
            cur = cur.parent
        else:
            return False
        cur = cur.parent
    return True


class _TreeBuilder(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.root = Node("#document")
        self.stack = [self.root]

    def handle_starttag(self, tag, attrs):
        node = Node(tag, {k: (v or "") for k, v in attrs}, parent=self.stack[-1])
        self.stack[-1].children.append(node)
        if tag not in VOID_TAGS:
            self.stack.append(node)

    def handle_startendtag(self, tag, attrs):
        node = Node(tag, {k: (v or "") for k, v in attrs}, parent=self.stack[-1])
        self.stack[-1].children.append(node)

    def handle_endtag(self, tag):
        # close the nearest matching open element; ignore strays
        for i in range(len(self.stack) - 1, 0, -1):
            if self.stack[i].tag == tag:
                del self.stack[i:]
                return

    def handle_data(self, data):
        if data:
            self.stack[-1].children.append(data)


def parse_html(html: str) -> Node:
    builder = _TreeBuilder()
    builder.feed(html)
    builder.close()
    return builder.root
