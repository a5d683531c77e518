// Wire types for the /api/v1 endpoints.

export interface AlternativeJson {
  value: string;
  sources: string[];
}

export interface FieldResolutionJson {
  value: string;
  sources: string[];
  confidence: number;
  alternatives: AlternativeJson[];
}

export interface SummaryJson {
  name: FieldResolutionJson | null;
  gender: FieldResolutionJson | null;
  place: FieldResolutionJson | null;
  image: FieldResolutionJson | null;
}

export interface BlogProfileJson {
  url: string;
  display_name: string | null;
  location: string | null;
  avatar_url: string | null;
  about: string | null;
}

export interface SourceStatusJson {
  provider: string;
  kind: "social" | "web";
  status: string;
  latency_ms: number;
}

export interface IdentifyResponse {
  email: string;
  cached: boolean;
  summary: SummaryJson;
  blog_profiles: BlogProfileJson[];
  sources: SourceStatusJson[];
  summary_success: boolean;
  blog_success: boolean;
  generated_at: string;
}

export interface HealthResponse {
  status: string;
  providers: number;
}
