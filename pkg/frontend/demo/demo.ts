/**
 * Demo wiring: static result page, live hover tracking against a locally
 * running ingest service (default http://127.0.0.1:8077, override with
 * ?service=http://host:port).
 *
 * Serve the frontend directory with any static file server after building,
 * e.g. `python3 -m http.server 8000`, then open /demo/index.html.
 */

import { contextFromFixture, type ParityFixture } from "../src/textnorm.js";
import { Tracker } from "../src/tracker.js";
import type { AoiBinding } from "../src/hover.js";

const ABSTRACTS: Record<string, string> = {
  "lit-40251":
    "Kinderarmut hat in Deutschland trotz wachsenden Wohlstands zugenommen. " +
    "Der Beitrag analysiert Ursachen auf Arbeitsmarkt- und Familienebene und " +
    "bewertet sozialpolitische Instrumente nach ihrer Reichweite.",
  "lit-88730":
    "Auf Basis von Längsschnittdaten wird gezeigt, wie soziale Herkunft über " +
    "primäre und sekundäre Effekte die Bildungsbeteiligung prägt und welche " +
    "Rolle institutionelle Übergänge dabei spielen.",
  "proj-1174":
    "Das Projekt verfolgt Erwerbsverläufe Zugewanderter über mehrere Jahre " +
    "und misst die Wirkung von Sprachkursen und Qualifizierungsangeboten auf " +
    "Beschäftigung und Löhne.",
};

// order matters: more specific regions first, since hit resolution takes
// the first binding whose selector encloses the hovered node
const BINDINGS: AoiBinding[] = [
  { aoi: "abstract", selector: ".detail-abstract" },
  {
    aoi: "metadata_view",
    selector: "#detail",
    fieldSelectors: {
      title: ".detail-title",
      person: ".detail-person",
      source: ".detail-source",
      category: ".detail-category",
      keywords: ".detail-keywords",
    },
  },
  {
    aoi: "result_list",
    selector: "#results",
    fieldSelectors: {
      title: ".result-title",
      person: ".result-person",
      source: ".result-source",
      snippet: ".result-snippet",
      category: ".result-category",
      keywords: ".result-keywords",
    },
  },
  { aoi: "facets", selector: "#facets" },
  { aoi: "term_recommender", selector: "#recommender" },
];

function text(el: Element | null, selector: string): string {
  return el?.querySelector(selector)?.textContent?.trim() ?? "";
}

async function main(): Promise<void> {
  const fixture = (await (
    await fetch("../tests/fixtures/normalization_parity.json")
  ).json()) as ParityFixture;
  const norm = contextFromFixture(fixture);

  const service =
    new URLSearchParams(location.search).get("service") ?? "http://127.0.0.1:8077";
  const tracker = new Tracker(
    {
      serviceBaseUrl: service,
      aoiBindings: BINDINGS,
      profiles: fixture.profiles,
      blacklist: fixture.blacklist,
      minSearchTermLen: fixture.min_search_term_len,
    },
    norm,
  ).attach(document, BINDINGS);

  const form = document.querySelector<HTMLFormElement>("#search-form");
  const input = document.querySelector<HTMLInputElement>("#search-input");
  form?.addEventListener("submit", (ev) => {
    ev.preventDefault();
    tracker.onQuerySubmit(input?.value ?? "");
  });

  for (const entry of document.querySelectorAll<HTMLElement>(".result")) {
    entry.addEventListener("click", () => {
      const docId = entry.dataset["docId"] ?? "";
      const title = text(entry, ".result-title");
      const keywords = (entry.dataset["keywords"] ?? "")
        .split(",")
        .map((k) => k.trim())
        .filter((k) => k.length > 0);
      tracker.onDocumentClick({ docId, title, keywords });

      const detail = document.querySelector("#detail");
      if (detail instanceof HTMLElement) {
        detail.classList.add("open");
        for (const [sel, value] of [
          [".detail-title", title],
          [".detail-person", text(entry, ".result-person")],
          [".detail-source", text(entry, ".result-source")],
          [".detail-category", text(entry, ".result-category")],
          [".detail-keywords", keywords.join(" · ")],
          [".detail-abstract", ABSTRACTS[docId] ?? ""],
        ] as const) {
          const node = detail.querySelector(sel);
          if (node !== null) node.textContent = value;
        }
      }
    });
  }
}

void main();
