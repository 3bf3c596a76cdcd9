/*
 * Copyright 2026 The Playtest Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

namespace playtest::detail {

// Fallback page when no static directory is configured: a bare client that
// is enough to record a demo or watch a run.
inline constexpr const char* kIndexPage = R"html(<!doctype html>
<html><head><meta charset="utf-8"><title>playtest</title>
<style>
body{font-family:sans-serif;margin:1em}
canvas{border:1px solid #888;height:80vh;aspect-ratio:480/800;touch-action:none}
#bar *{margin-right:.5em}
</style></head><body>
<div id="bar">
<select id="game"><option>slingshot</option><option>linkpair</option>
<option>slider</option><option>buttonrow</option></select>
seed <input id="seed" type="number" value="1" style="width:5em">
<button id="demo">demo</button><button id="play">play</button><button id="stop">stop</button>
<span id="status"></span></div>
<p id="prompt"></p>
<canvas id="c" width="480" height="800"></canvas>
<script>
const c=document.getElementById('c'),g=c.getContext('2d');
const $=id=>document.getElementById(id);
let ws,token=null,planned=null;
function connect(){
  ws=new WebSocket(`ws://${location.host}/session`+(token?`?resume=${token}`:''));
  ws.onmessage=ev=>{const m=JSON.parse(ev.data);
    if(m.type==='frame'){const raw=atob(m.data),img=g.createImageData(m.w,m.h);
      for(let i=0,j=0;i<raw.length;i+=3,j+=4){img.data[j]=raw.charCodeAt(i);
        img.data[j+1]=raw.charCodeAt(i+1);img.data[j+2]=raw.charCodeAt(i+2);img.data[j+3]=255;}
      g.putImageData(img,0,0);overlay();}
    else if(m.type==='prompt'){$('prompt').textContent=m.text;}
    else if(m.type==='status'){token=m.session;planned=m.planned||null;
      $('status').textContent=`${m.state} score ${m.score} level ${m.level} actions ${m.actions}`+
        (m.message?` (${m.message})`:'');if(m.state!=='running')$('prompt').textContent='';}};
  ws.onclose=()=>setTimeout(connect,1000);
}
function overlay(){if(!planned)return;g.strokeStyle='#f0f';g.lineWidth=3;
  for(const s of planned.gestures){g.beginPath();
    if(s.kind==='tap'){g.arc(s.start[0],s.start[1],14,0,7);}
    else{g.moveTo(s.start[0],s.start[1]);g.lineTo(s.end[0],s.end[1]);}g.stroke();}}
function control(cmd){ws.send(JSON.stringify({type:'control',cmd,game:$('game').value,seed:+$('seed').value}));}
$('demo').onclick=()=>control('start_demo');$('play').onclick=()=>control('start_play');
$('stop').onclick=()=>control('stop');
function pointer(phase,e){const r=c.getBoundingClientRect();
  ws.send(JSON.stringify({type:'pointer',phase,x:Math.round((e.clientX-r.left)*480/r.width),
    y:Math.round((e.clientY-r.top)*800/r.height),t_ms:Math.round(performance.now())}));}
let down=false;
c.onpointerdown=e=>{down=true;c.setPointerCapture(e.pointerId);pointer('down',e);};
c.onpointermove=e=>{if(down)pointer('move',e);};
c.onpointerup=e=>{if(down){down=false;pointer('up',e);}};
connect();
</script></body></html>
)html";

}  // namespace playtest::detail
