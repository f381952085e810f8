/** Byte-exact leaf extraction from a JSON document.
 *
 * JSON.parse normalizes numbers (12.0 becomes 12), so a view that must echo
 * the service's bytes cannot round-trip through it. This scanner walks the
 * source text and records the literal slice for every primitive leaf,
 * keyed by path. Parsing stays strict enough to reject anything the
 * service would never emit.
 */

export type PathSeg = string | number;

export class JsonSyntaxError extends Error {
  constructor(message: string, readonly offset: number) {
    super(`${message} at offset ${offset}`);
    this.name = "JsonSyntaxError";
  }
}

const WS = new Set([" ", "\t", "\n", "\r"]);
const NUM = /[-+0-9eE.]/;

class Scanner {
  pos = 0;
  readonly spans = new Map<string, string>();

  constructor(private text: string) {}

  private peek(): string {
    const ch = this.text[this.pos];
    if (ch === undefined) throw new JsonSyntaxError("unexpected end of input", this.pos);
    return ch;
  }

  skipWs(): void {
    while (this.pos < this.text.length && WS.has(this.text[this.pos]!)) this.pos++;
  }

  private expect(ch: string): void {
    if (this.text[this.pos] !== ch) {
      throw new JsonSyntaxError(`expected ${JSON.stringify(ch)}`, this.pos);
    }
    this.pos++;
  }

  private string(): string {
    const start = this.pos;
    this.expect('"');
    while (true) {
      const ch = this.peek();
      this.pos++;
      if (ch === "\\") this.pos++; // skip the escaped char, \uXXXX digits are inert
      else if (ch === '"') break;
    }
    return JSON.parse(this.text.slice(start, this.pos)) as string;
  }

  private literalEnd(): number {
    const rest = this.text.slice(this.pos);
    for (const word of ["true", "false", "null"]) {
      if (rest.startsWith(word)) return this.pos + word.length;
    }
    if (NUM.test(this.peek())) {
      let end = this.pos;
      while (end < this.text.length && NUM.test(this.text[end]!)) end++;
      return end;
    }
    throw new JsonSyntaxError("unrecognized value", this.pos);
  }

  value(path: PathSeg[]): void {
    this.skipWs();
    const ch = this.peek();
    if (ch === "{") {
      this.pos++;
      this.skipWs();
      if (this.peek() === "}") {
        this.pos++;
        return;
      }
      while (true) {
        this.skipWs();
        const key = this.string();
        this.skipWs();
        this.expect(":");
        this.value([...path, key]);
        this.skipWs();
        if (this.peek() === ",") {
          this.pos++;
          continue;
        }
        this.expect("}");
        break;
      }
    } else if (ch === "[") {
      this.pos++;
      this.skipWs();
      if (this.peek() === "]") {
        this.pos++;
        return;
      }
      let idx = 0;
      while (true) {
        this.value([...path, idx++]);
        this.skipWs();
        if (this.peek() === ",") {
          this.pos++;
          continue;
        }
        this.expect("]");
        break;
      }
    } else if (ch === '"') {
      const start = this.pos;
      this.string();
      this.record(path, this.text.slice(start, this.pos));
    } else {
      const end = this.literalEnd();
      this.record(path, this.text.slice(this.pos, end));
      this.pos = end;
    }
  }

  private record(path: PathSeg[], raw: string): void {
    this.spans.set(joinPath(path), raw);
  }
}

export function joinPath(path: PathSeg[]): string {
  // object keys in the wild here are device ids and ISO dates; a literal
  // "." inside a key would collide, so escape it
  return path.map((seg) => String(seg).replace(/\./g, "\\.")).join(".");
}

/** Map of dotted path -> raw source slice for every primitive leaf. */
export function leafSpans(text: string): Map<string, string> {
  const scanner = new Scanner(text);
  scanner.value([]);
  scanner.skipWs();
  if (scanner.pos !== text.length) {
    throw new JsonSyntaxError("trailing content", scanner.pos);
  }
  return scanner.spans;
}

/** Raw slice for a path; JSON strings come back without quotes. */
export function rawLeaf(spans: Map<string, string>, path: PathSeg[]): string | undefined {
  const raw = spans.get(joinPath(path));
  if (raw === undefined) return undefined;
  return raw.startsWith('"') ? (JSON.parse(raw) as string) : raw;
}
