/**
 * Snowball stemmer for German.
 *
 * R1/R2 are index positions; R1 is moved right so that at least 3
 * characters precede it. Umlauts transliterate at the end, eszett folds to
 * "ss" up front, matching the server-side stemmer exactly.
 */

const VOWELS = "aeiouyäöü";
const S_ENDING = "bdfghklmnrt";
const ST_ENDING = "bdfghklmnt";

function regionAfter(word: string, start: number): number {
  for (let i = start + 1; i < word.length; i++) {
    if (!VOWELS.includes(word[i]!) && VOWELS.includes(word[i - 1]!)) {
      return i + 1;
    }
  }
  return word.length;
}

const FINAL_MAP: Record<string, string> = {
  U: "u",
  Y: "y",
  "ä": "a",
  "ö": "o",
  "ü": "u",
};

export function stemGerman(input: string): string {
  let word = input.toLowerCase().replaceAll("ß", "ss");
  if (word.length <= 1) return word;

  // u/y between vowels are consonantal; mark them uppercase for the steps
  const chars = word.split("");
  for (let i = 1; i < chars.length - 1; i++) {
    if (
      "uy".includes(chars[i]!) &&
      VOWELS.includes(chars[i - 1]!) &&
      VOWELS.includes(chars[i + 1]!)
    ) {
      chars[i] = chars[i]!.toUpperCase();
    }
  }
  word = chars.join("");

  const p1Raw = regionAfter(word, 0);
  const p2 = regionAfter(word, p1Raw);
  const p1 = Math.max(3, p1Raw);

  // step 1
  for (const suffix of ["ern", "em", "er", "en", "es", "e", "s"]) {
    if (word.endsWith(suffix)) {
      if (suffix === "s") {
        if (word.length - 1 >= p1 && word.length >= 2 && S_ENDING.includes(word[word.length - 2]!)) {
          word = word.slice(0, -1);
        }
      } else if (word.length - suffix.length >= p1) {
        word = word.slice(0, -suffix.length);
        if ((suffix === "en" || suffix === "es" || suffix === "e") && word.endsWith("niss")) {
          word = word.slice(0, -1);
        }
      }
      break;
    }
  }

  // step 2
  for (const suffix of ["est", "en", "er", "st"]) {
    if (word.endsWith(suffix)) {
      if (suffix === "st") {
        if (word.length - 2 >= p1 && word.length >= 6 && ST_ENDING.includes(word[word.length - 3]!)) {
          word = word.slice(0, -2);
        }
      } else if (word.length - suffix.length >= p1) {
        word = word.slice(0, -suffix.length);
      }
      break;
    }
  }

  // step 3 (d-suffixes, conditions on R2)
  for (const suffix of ["isch", "lich", "heit", "keit", "end", "ung", "ig", "ik"]) {
    if (word.endsWith(suffix)) {
      const n = word.length - suffix.length;
      if (suffix === "end" || suffix === "ung") {
        if (n >= p2) {
          word = word.slice(0, n);
          if (
            word.endsWith("ig") &&
            word.length - 2 >= p2 &&
            !(word.length >= 3 && word[word.length - 3] === "e")
          ) {
            word = word.slice(0, -2);
          }
        }
      } else if (suffix === "ig" || suffix === "ik" || suffix === "isch") {
        if (n >= p2 && !(n >= 1 && word[n - 1] === "e")) {
          word = word.slice(0, n);
        }
      } else if (suffix === "lich" || suffix === "heit") {
        if (n >= p2) {
          word = word.slice(0, n);
          if ((word.endsWith("er") || word.endsWith("en")) && word.length - 2 >= p1) {
            word = word.slice(0, -2);
          }
        }
      } else {
        // keit
        if (n >= p2) {
          word = word.slice(0, n);
          if (word.endsWith("lich") && word.length - 4 >= p2) {
            word = word.slice(0, -4);
          } else if (word.endsWith("ig") && word.length - 2 >= p2) {
            word = word.slice(0, -2);
          }
        }
      }
      break;
    }
  }

  let out = "";
  for (const c of word) {
    out += FINAL_MAP[c] ?? c;
  }
  return out;
}
