/** Shapes served by the /v1 HTTP API. Field names match the wire format. */

export type EmotionKind =
  | "anger"
  | "disgust"
  | "fear"
  | "anxiety"
  | "sadness"
  | "happiness"
  | "relaxation"
  | "desire";

export interface EmotionDescriptor {
  kind: EmotionKind;
  label: string;
  glyph: string;
  valence: string;
  arousal: string;
  motivation: string;
}

export interface SchemaDoc {
  version: number;
  scale_min: number;
  scale_max: number;
  scale_hint: string;
  emotions: EmotionDescriptor[];
}

export interface CardInfo {
  card_id: string;
  title: string;
  stage_id: string;
  stage_name: string;
}

export interface RecordRow {
  record_id: string;
  board_id: string;
  card_id: string;
  member_id: string;
  emotion: string;
  intensity: number;
  captured_at: string;
  stage_id: string;
  stage_name: string;
  schema_version: number;
}

export interface SaveResult {
  message: string;
  records: RecordRow[];
}

export interface EmotionRow {
  emotion: EmotionKind;
  count: number;
  mean: number | null;
  min: number | null;
  max: number | null;
  latest: number | null;
}

export interface SummaryDoc {
  card_id: string;
  title: string;
  respondent_count: number;
  emotions: EmotionRow[];
}

export interface BucketStat {
  count: number;
  mean: number | null;
}

export interface Bucket {
  start: string;
  emotions: Record<string, BucketStat>;
}

export interface SeriesDoc {
  scope: string;
  granularity: string;
  timezone: string;
  buckets: Bucket[];
}

export interface Peak {
  emotion: EmotionKind;
  bucket_start: string;
  mean: number;
}

export interface StageRow {
  stage_id: string;
  stage_name: string;
  count: number;
  emotions: Record<string, BucketStat>;
}

export interface DashboardDoc {
  series: SeriesDoc;
  peaks: Peak[];
  stages: StageRow[];
  sentiment: number | null;
  filter: {
    emotions?: string[] | null;
    member?: string | null;
    from?: string | null;
    to?: string | null;
  };
}

export type Granularity = "hour" | "day" | "week";

export interface DashboardQuery {
  granularity?: Granularity;
  emotions?: EmotionKind[];
  member?: string;
  from?: string;
  to?: string;
}
