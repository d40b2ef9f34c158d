"""Casson-Walker and Lescop invariants of surgery on framed links from Gauss codes."""

from cwkit.gauss import FramedLink, GaussCodeError, GaussDiagram, parse_link, parse_links, serialize

__all__ = ["FramedLink", "GaussCodeError", "GaussDiagram", "parse_link", "parse_links", "serialize"]
__version__ = "0.1.0"
