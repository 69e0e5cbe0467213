// @vitest-environment jsdom
/**
 * DOM hit-testing against the demo page markup. jsdom has no layout, so
 * caretPositionFromPoint is stubbed; everything after the caret (word
 * expansion, AOI binding, field resolution, event wiring) is the real code
 * path a browser takes.
 */

import { readFileSync } from "node:fs";
import { join } from "node:path";
import { beforeEach, describe, expect, it } from "vitest";
import { DomHitTester, type AoiBinding } from "../src/hover.js";
import { contextFromFixture, type ParityFixture } from "../src/textnorm.js";
import { Tracker } from "../src/tracker.js";
import type { StorageLike } from "../src/store.js";

// under the jsdom environment import.meta.url is not a file: URL, so
// resolve from the package root (vitest runs with cwd = frontend/)
const fixture = JSON.parse(
  readFileSync(join(process.cwd(), "tests/fixtures/normalization_parity.json"), "utf8"),
) as ParityFixture;
const ctx = contextFromFixture(fixture);

const demoHtml = readFileSync(join(process.cwd(), "demo/index.html"), "utf8");

// same shape the demo wires up; order matters (specific regions first)
const BINDINGS: AoiBinding[] = [
  { aoi: "abstract", selector: ".detail-abstract" },
  {
    aoi: "metadata_view",
    selector: "#detail",
    fieldSelectors: { title: ".detail-title", keywords: ".detail-keywords" },
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

type CaretStub = { offsetNode: Node; offset: number } | null;
let caret: CaretStub = null;

/** Point the caret stub at a word inside the first element matching sel. */
function caretOn(sel: string, word: string): void {
  const el = document.querySelector(sel);
  if (el === null) throw new Error(`no element ${sel}`);
  const walker = document.createTreeWalker(el, NodeFilter.SHOW_TEXT);
  for (let node = walker.nextNode(); node !== null; node = walker.nextNode()) {
    const idx = (node.textContent ?? "").indexOf(word);
    if (idx >= 0) {
      caret = { offsetNode: node, offset: idx + 1 }; // an inner offset
      return;
    }
  }
  throw new Error(`word ${word} not under ${sel}`);
}

function mem(): StorageLike {
  const m = new Map<string, string>();
  return {
    getItem: (k) => m.get(k) ?? null,
    setItem: (k, v) => void m.set(k, v),
    removeItem: (k) => void m.delete(k),
  };
}

// jsdom implements neither caret API; the lib.dom signatures are stricter
// than the stubs need, hence the unknown casts
function stubDoc(): {
  caretPositionFromPoint?: () => CaretStub;
  caretRangeFromPoint?: () => { startContainer: Node; startOffset: number } | null;
} {
  return document as unknown as ReturnType<typeof stubDoc>;
}

beforeEach(() => {
  const body = /<body>([\s\S]*)<\/body>/.exec(demoHtml)![1]!;
  document.body.innerHTML = body.replace(/<script[\s\S]*?<\/script>/g, "");
  caret = null;
  stubDoc().caretPositionFromPoint = () => caret;
});

describe("DomHitTester", () => {
  it("resolves word, area, and field from a caret in a result title", () => {
    const tester = new DomHitTester(document, BINDINGS);
    caretOn(".result-title", "Ungleichheit");
    expect(tester.hitAt(0, 0)).toEqual({
      word: "Ungleichheit",
      aoi: "result_list",
      field: "title",
    });
  });

  it("resolves each bound field of a result entry", () => {
    const tester = new DomHitTester(document, BINDINGS);
    for (const [sel, word, field] of [
      [".result-person", "Butterwegge", "person"],
      [".result-source", "Sozialreform", "source"],
      [".result-snippet", "Kinderarmut", "snippet"],
      [".result-category", "Soziologie", "category"],
      [".result-keywords", "Armut", "keywords"],
    ] as const) {
      caretOn(sel, word);
      const hit = tester.hitAt(0, 0);
      expect(hit?.field, sel).toBe(field);
      expect(hit?.aoi, sel).toBe("result_list");
      expect(hit?.word, sel).toBe(word);
    }
  });

  it("maps facet and recommender text to their areas with field none", () => {
    const tester = new DomHitTester(document, BINDINGS);
    caretOn("#facets", "Soziologie");
    expect(tester.hitAt(0, 0)).toMatchObject({ aoi: "facets", field: "none" });
    caretOn("#recommender", "Sozialpolitik");
    expect(tester.hitAt(0, 0)).toMatchObject({ aoi: "term_recommender", field: "none" });
  });

  it("prefers the more specific abstract binding inside the detail view", () => {
    const abstract = document.querySelector(".detail-abstract")!;
    abstract.textContent = "Langzeitstudie zu Erwerbsverläufen";
    const tester = new DomHitTester(document, BINDINGS);
    caretOn(".detail-abstract", "Langzeitstudie");
    expect(tester.hitAt(0, 0)).toMatchObject({ aoi: "abstract", field: "none" });
    const title = document.querySelector(".detail-title")!;
    title.textContent = "Migration und Arbeitsmarkt";
    caretOn(".detail-title", "Migration");
    expect(tester.hitAt(0, 0)).toMatchObject({ aoi: "metadata_view", field: "title" });
  });

  it("returns null outside every binding, on gaps, and without a caret", () => {
    const tester = new DomHitTester(document, BINDINGS);
    expect(tester.hitAt(0, 0)).toBeNull(); // caret stub returns null
    caretOn("footer", "Demo");
    expect(tester.hitAt(0, 0)).toBeNull(); // footer is unbound
    const node = document.querySelector(".result-title")!.firstChild!;
    caret = { offsetNode: node, offset: 5 }; // the space in "Armut und ..."
    expect(tester.hitAt(0, 0)).toBeNull();
  });

  it("falls back to caretRangeFromPoint when needed", () => {
    const doc = stubDoc();
    delete doc.caretPositionFromPoint;
    const node = document.querySelector(".result-title")!.firstChild!;
    doc.caretRangeFromPoint = () => ({ startContainer: node, startOffset: 1 });
    const tester = new DomHitTester(document, BINDINGS);
    expect(tester.hitAt(0, 0)?.word).toBe("Armut");
  });
});

describe("demo page wiring", () => {
  it("collects dwell through real pointer events and ships on submit", async () => {
    let now = 50_000;
    const sent: string[] = [];
    const tracker = new Tracker(
      {
        serviceBaseUrl: "http://svc.invalid",
        aoiBindings: BINDINGS,
        profiles: fixture.profiles,
        blacklist: fixture.blacklist,
      },
      ctx,
      {
        storage: mem(),
        clock: () => now,
        post: (body) => {
          for (const line of body.split("\n")) if (line) sent.push(line);
          return Promise.resolve({ status: 202, rejected: 0 });
        },
        notice: () => {},
      },
    ).attach(document, BINDINGS);

    const move = () =>
      document.dispatchEvent(new MouseEvent("pointermove", { clientX: 1, clientY: 1 }));

    caretOn(".result-title", "Ungleichheit");
    move();
    now += 1_000;
    caretOn(".result-snippet", "Kinderarmut");
    move();
    now += 650;
    document.dispatchEvent(new MouseEvent("pointerleave"));

    const input = document.querySelector<HTMLInputElement>("#search-input")!;
    input.value = "Armut Ungleichheit";
    tracker.onQuerySubmit(input.value);
    await tracker.flush();

    expect(sent.length).toBe(1);
    const rec = JSON.parse(sent[0]!);
    expect(rec.type).toBe("query");
    expect(rec.raw_terms).toEqual(["Armut", "Ungleichheit"]);
    const stems = rec.fixations.map((f: { stem: string }) => f.stem).sort();
    expect(stems).toEqual(["kinderarmut", "ungleich"]);
    const by = Object.fromEntries(
      rec.fixations.map((f: { stem: string; total_ms: number; first_aoi: string; first_field: string }) => [
        f.stem,
        f,
      ]),
    );
    expect(by["ungleich"].total_ms).toBe(1_000);
    expect(by["ungleich"].first_field).toBe("title");
    expect(by["kinderarmut"].total_ms).toBe(650);
    expect(by["kinderarmut"].first_field).toBe("snippet");
    tracker.stop();
  });

  it("emits a click record from a result entry's data attributes", async () => {
    const sent: string[] = [];
    const tracker = new Tracker(
      {
        serviceBaseUrl: "http://svc.invalid",
        aoiBindings: BINDINGS,
        profiles: fixture.profiles,
        blacklist: fixture.blacklist,
      },
      ctx,
      {
        storage: mem(),
        clock: () => 1,
        post: (body) => {
          for (const line of body.split("\n")) if (line) sent.push(line);
          return Promise.resolve({ status: 202, rejected: 0 });
        },
        notice: () => {},
      },
    );

    const entry = document.querySelector<HTMLElement>(".result")!;
    tracker.onDocumentClick({
      docId: entry.dataset["docId"]!,
      title: entry.querySelector(".result-title")!.textContent!.trim(),
      keywords: entry
        .dataset["keywords"]!.split(",")
        .map((k) => k.trim())
        .filter((k) => k.length > 0),
    });
    await tracker.flush();

    const rec = JSON.parse(sent[0]!);
    expect(rec.type).toBe("click");
    expect(rec.doc_id).toBe("lit-40251");
    expect(rec.title).toBe("Armut und soziale Ungleichheit bei Kindern");
    expect(rec.keywords).toEqual(["Armut", "soziale Ungleichheit", "Kinderarmut"]);
  });
});
